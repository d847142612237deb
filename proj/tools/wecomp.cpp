// Command-line front door for the wecomp library: weight enumerators and
// their combinators, circuit-to-code compilation, counting gaps, and the two
// noisy-oracle recovery procedures.
//
// All machine output is JSON on stdout (one document per run); big integers
// are decimal strings. Exit codes: 0 success, 2 input error, 3 resource
// error, 4 certification failure or cross-check disagreement, 1 internal.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wecomp/wecomp.hpp"

namespace {

using nlohmann::ordered_json;
using namespace wecomp;

struct Output {
    bool pretty = false;
    std::string path;

    void emit(const ordered_json& j) const {
        std::string s = pretty ? j.dump(2) : j.dump();
        s += '\n';
        if (path.empty()) {
            std::fwrite(s.data(), 1, s.size(), stdout);
            std::fflush(stdout);
        } else {
            std::ofstream f(path, std::ios::binary);
            if (!f) throw InputError("cannot open output path " + path);
            f.write(s.data(), std::streamsize(s.size()));
        }
    }
};

LinearCode load_code(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot read code file " + path);
    return parse_code(f);
}

Circuit load_circuit(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot read circuit file " + path);
    return parse_circuit(f);
}

BoolCircuit load_bool_circuit(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot read boolean circuit file " + path);
    return parse_bool_circuit(f);
}

mpq_class parse_rational(const std::string& s) {
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw InputError("evaluation point must be a rational like 2 or -3/4, or omega");
    if (q.get_den() == 0) throw InputError("evaluation point has a zero denominator");
    q.canonicalize();
    return q;
}

mpz_class parse_big_int(const std::string& s) {
    mpz_class v;
    if (s.empty() || mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
        throw InputError("expected a decimal integer, got '" + s + "'");
    return v;
}

ordered_json dist_json(const WeightDistribution& d) {
    ordered_json a = ordered_json::array();
    for (const auto& c : d.counts) a.push_back(c.get_str());
    return a;
}

ordered_json cyc_coeffs(const CycInt& z) {
    ordered_json a = ordered_json::array();
    for (int i = 0; i < 4; ++i) a.push_back(z.coeff(i).get_str());
    return a;
}

ordered_json code_json(const LinearCode& c) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < c.dimension(); ++i)
        rows.push_back(c.generator().row(i).to_string());
    return ordered_json{{"n", c.length()}, {"k", c.dimension()}, {"rows", rows}};
}

const std::map<std::string, Semantics> kSemanticsNames{
    {"codeword", Semantics::codeword}, {"multiset", Semantics::multiset}};
const std::map<std::string, NoiseMode> kNoiseNames{
    {"adversarial", NoiseMode::adversarial_boundary},
    {"uniform", NoiseMode::uniform_random}};

int run(int argc, char** argv) {
    CLI::App app{"weight enumerators of binary linear codes and everything they count"};
    app.require_subcommand(1);

    Output out;
    unsigned threads = 0;
    long precision = 0;
    app.add_flag("--pretty", out.pretty, "indent the JSON output");
    app.add_option("-o,--output", out.path, "write JSON to this file instead of stdout");
    app.add_option("--threads", threads,
                   "thread cap for enumeration (default: WECOMP_THREADS, then all cores)");
    app.add_option("--precision", precision, "working precision in bits where applicable");

    int exit_code = 0;

    // wd ------------------------------------------------------------------
    auto* wd = app.add_subcommand("wd", "weight distribution of a code");
    std::string wd_path;
    Semantics wd_sem = Semantics::codeword;
    wd->add_option("code", wd_path, "code file")->required();
    wd->add_option("--semantics", wd_sem, "codeword or multiset")
        ->transform(CLI::CheckedTransformer(kSemanticsNames));
    wd->callback([&] {
        LinearCode c = load_code(wd_path);
        WeightDistribution d = weight_distribution(c, wd_sem, threads);
        out.emit({{"n", c.length()},
                  {"k", c.dimension()},
                  {"distribution", dist_json(d)},
                  {"total", d.total().get_str()}});
    });

    // eval ----------------------------------------------------------------
    auto* ev = app.add_subcommand("eval", "evaluate the weight enumerator at a point");
    std::string ev_path, ev_q = "omega";
    Semantics ev_sem = Semantics::codeword;
    ev->add_option("code", ev_path, "code file")->required();
    ev->add_option("--q", ev_q, "rational point or 'omega'")->required();
    ev->add_option("--semantics", ev_sem, "codeword or multiset")
        ->transform(CLI::CheckedTransformer(kSemanticsNames));
    ev->callback([&] {
        LinearCode c = load_code(ev_path);
        if (ev_q == "omega") {
            CycInt v = evaluate_at_omega(c, ev_sem, threads);
            out.emit({{"q", "omega"}, {"value", v.str()}, {"coeffs", cyc_coeffs(v)}});
        } else {
            mpq_class q = parse_rational(ev_q);
            mpq_class v = evaluate(c, q, ev_sem, threads);
            out.emit({{"q", q.get_str()}, {"value", v.get_str()}});
        }
    });

    // pack / unpack -------------------------------------------------------
    auto* pk = app.add_subcommand("pack", "pack the distribution into w_C(2^n)");
    std::string pk_path;
    Semantics pk_sem = Semantics::codeword;
    pk->add_option("code", pk_path, "code file")->required();
    pk->add_option("--semantics", pk_sem, "codeword or multiset")
        ->transform(CLI::CheckedTransformer(kSemanticsNames));
    pk->callback([&] {
        LinearCode c = load_code(pk_path);
        mpz_class v = pack_eval(c, pk_sem, threads);
        out.emit({{"n", c.length()}, {"k", c.dimension()}, {"packed", v.get_str()}});
    });

    auto* up = app.add_subcommand("unpack", "read base-2^n digits back into coefficients");
    std::string up_value;
    std::size_t up_n = 0;
    up->add_option("value", up_value, "packed integer (decimal)")->required();
    up->add_option("--n", up_n, "code length")->required();
    up->callback([&] {
        WeightDistribution d = unpack_coefficients(parse_big_int(up_value), up_n);
        out.emit({{"n", up_n}, {"coefficients", dist_json(d)}});
    });

    // sum -----------------------------------------------------------------
    auto* sm = app.add_subcommand("sum", "combine two codes");
    std::string sm_a, sm_b;
    bool sm_direct = false, sm_wreath = false;
    sm->add_option("codeA", sm_a, "left code file")->required();
    sm->add_option("codeB", sm_b, "right code file")->required();
    auto* sm_dflag = sm->add_flag("--direct", sm_direct, "direct sum");
    sm->add_flag("--wreath", sm_wreath, "wreath sum")->excludes(sm_dflag);
    sm->callback([&] {
        if (sm_direct == sm_wreath)
            throw InputError("choose exactly one of --direct / --wreath");
        LinearCode a = load_code(sm_a), b = load_code(sm_b);
        LinearCode r = sm_direct ? direct_sum(a, b) : wreath_sum(a, b);
        ordered_json j = code_json(r);
        j["construction"] = sm_direct ? "direct" : "wreath";
        j["text"] = code_to_text(r);
        out.emit(j);
    });

    // compile -------------------------------------------------------------
    auto* cp = app.add_subcommand("compile", "compile a circuit to its amplitude code");
    std::string cp_path;
    cp->add_option("circuit", cp_path, "circuit file")->required();
    cp->callback([&] {
        CompiledAmplitude ca = compile(load_circuit(cp_path));
        out.emit({{"zero", ca.zero},
                  {"n_hadamards", ca.n_hadamards},
                  {"phase_exp", ca.phase_exp},
                  {"multiplicity_exp", ca.multiplicity_exp},
                  {"code", code_json(ca.code)}});
    });

    // amplitude -----------------------------------------------------------
    auto* am = app.add_subcommand("amplitude", "exact <0|U|0> of a circuit");
    std::string am_path;
    bool am_check = false;
    double am_tol = 1e-9;
    am->add_option("circuit", am_path, "circuit file")->required();
    am->add_flag("--check-statevector", am_check, "cross-check against dense simulation");
    am->add_option("--tolerance", am_tol, "max |difference| for the cross-check");
    am->callback([&] {
        Circuit c = load_circuit(am_path);
        ExactAmplitude a = amplitude_exact(c, threads);
        mpfr_prec_t prec = precision ? mpfr_prec_t(precision) : 128;
        ApproxComplex z = amplitude_to_complex(a, prec);
        ordered_json j{{"value", a.value.str()},
                       {"coeffs", cyc_coeffs(a.value)},
                       {"half_power", a.half_power},
                       {"re", z.re().to_double()},
                       {"im", z.im().to_double()}};
        if (am_check) {
            ApproxComplex sv = statevector_amplitude(c, prec);
            double diff = ApproxComplex::dist_upper(z, sv).to_double();
            bool agree = diff < am_tol;
            j["statevector_re"] = sv.re().to_double();
            j["statevector_im"] = sv.im().to_double();
            j["difference"] = diff;
            j["agree"] = agree;
            if (!agree) exit_code = 4;
        }
        out.emit(j);
    });

    // gap -----------------------------------------------------------------
    auto* gp = app.add_subcommand("gap", "counting gap of a boolean circuit");
    std::string gp_path, gp_via = "we";
    gp->add_option("circuit", gp_path, "boolean circuit file")->required();
    gp->add_option("--via", gp_via, "we, brute, or both")
        ->check(CLI::IsMember({"we", "brute", "both"}));
    gp->callback([&] {
        BoolCircuit bc = load_bool_circuit(gp_path);
        ordered_json j;
        if (gp_via == "brute" || gp_via == "both") j["brute"] = gap_bruteforce(bc);
        if (gp_via == "we" || gp_via == "both")
            j["via_we"] = gap_via_weight_enumerator(bc, threads);
        if (gp_via == "both") {
            bool agree = j["brute"] == j["via_we"];
            j["agree"] = agree;
            if (!agree) exit_code = 4;
        }
        out.emit(j);
    });

    // recover-omega -------------------------------------------------------
    auto* ro = app.add_subcommand("recover-omega",
                                  "recover w_C(omega) from a noisy amplified oracle");
    std::string ro_path;
    double ro_alpha = 0, ro_scale = 0.99, ro_target = 0.05;
    NoiseMode ro_noise = NoiseMode::adversarial_boundary;
    std::uint64_t ro_seed = 0;
    long ro_k = -1;
    ro->add_option("code", ro_path, "code file")->required();
    ro->add_option("--alpha", ro_alpha, "noise growth rate, 0 < alpha < alpha0")->required();
    ro->add_option("--noise", ro_noise, "adversarial or uniform")
        ->required()
        ->transform(CLI::CheckedTransformer(kNoiseNames));
    ro->add_option("--seed", ro_seed, "noise seed")->required();
    ro->add_option("--k", ro_k, "amplification power, 1 mod 8 (default: chosen)");
    ro->add_option("--target", ro_target, "residual target for the k choice");
    ro->add_option("--scale", ro_scale, "noise magnitude as a fraction of the bound");
    ro->callback([&] {
        LinearCode c = load_code(ro_path);
        NoisyOracle oracle(c, ro_alpha, ro_noise, ro_seed, NoisyOracle::Points::omega_only,
                           ro_scale);
        RecoveryParams params;
        if (ro_k >= 0) params.k = ro_k;
        params.target_residual = ro_target;
        if (precision) params.precision_bits = mpfr_prec_t(precision);
        OmegaRecovery rep = recover_value_at_omega(c, oracle, params);
        ordered_json queries = ordered_json::array();
        for (const auto& q : rep.queries)
            queries.push_back({{"a", q.a}, {"length", q.length}, {"re", q.re}, {"im", q.im}});
        ordered_json residuals = ordered_json::array();
        for (double r : rep.residuals) residuals.push_back(r);
        out.emit({{"code", {{"n", c.length()}, {"k", c.dimension()}}},
                  {"alpha", rep.alpha},
                  {"seed", ro_seed},
                  {"k", rep.k},
                  {"queries", queries},
                  {"residuals", residuals},
                  {"recovered", rep.recovered.str()},
                  {"recovered_coeffs", cyc_coeffs(rep.recovered)},
                  {"query_count", oracle.query_count()}});
    });

    // recover-coeffs ------------------------------------------------------
    auto* rc = app.add_subcommand("recover-coeffs",
                                  "recover the weight distribution from a noisy point oracle");
    std::string rc_path;
    double rc_alpha = 0, rc_scale = 0.99, rc_r = 0;
    NoiseMode rc_noise = NoiseMode::adversarial_boundary;
    std::uint64_t rc_seed = 0;
    long rc_k = -1;
    rc->add_option("code", rc_path, "code file")->required();
    rc->add_option("--alpha", rc_alpha, "noise growth rate, 0 < alpha < 1")->required();
    rc->add_option("--noise", rc_noise, "adversarial or uniform")
        ->required()
        ->transform(CLI::CheckedTransformer(kNoiseNames));
    rc->add_option("--seed", rc_seed, "noise seed")->required();
    rc->add_option("--k", rc_k, "amplification power (default: chosen)");
    rc->add_option("--r", rc_r, "point cluster radius, 0 < r < 2 - 2^alpha");
    rc->add_option("--scale", rc_scale, "noise magnitude as a fraction of the bound");
    rc->callback([&] {
        LinearCode c = load_code(rc_path);
        NoisyOracle oracle(c, rc_alpha, rc_noise, rc_seed, NoisyOracle::Points::any, rc_scale);
        RecoveryParams params;
        if (rc_k >= 0) params.k = rc_k;
        if (rc_r > 0) params.r = rc_r;
        if (precision) params.precision_bits = mpfr_prec_t(precision);
        CoefficientRecovery rep = recover_coefficients(c, oracle, params);
        ordered_json phases = ordered_json::array();
        for (double p : rep.phases) phases.push_back(p);
        ordered_json answers = ordered_json::array();
        for (const auto& a : rep.answers) answers.push_back({a[0], a[1]});
        out.emit({{"code", {{"n", c.length()}, {"k", c.dimension()}}},
                  {"alpha", rep.alpha},
                  {"seed", rc_seed},
                  {"r", rep.r},
                  {"k", rep.k},
                  {"attempts", rep.attempts},
                  {"phases", phases},
                  {"answers", answers},
                  {"max_residual", rep.max_residual},
                  {"recovered", dist_json(rep.recovered)},
                  {"query_count", oracle.query_count()}});
    });

    // bench-enum ----------------------------------------------------------
    auto* be = app.add_subcommand("bench-enum", "time the enumerator on a random code");
    std::size_t be_n = 64, be_k = 0;
    std::uint64_t be_seed = 0;
    be->add_option("--k", be_k, "dimension of the random code")->required();
    be->add_option("--n", be_n, "length of the random code");
    be->add_option("--seed", be_seed, "generator seed")->required();
    be->callback([&] {
        LinearCode c = random_code(be_n, be_k, be_seed);
        auto t0 = std::chrono::steady_clock::now();
        WeightDistribution d = weight_distribution(c, Semantics::codeword, threads);
        std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        out.emit({{"n", be_n},
                  {"k", be_k},
                  {"seed", be_seed},
                  {"threads", resolve_threads(threads)},
                  {"elapsed_seconds", dt.count()},
                  {"total", d.total().get_str()},
                  {"distribution", dist_json(d)}});
    });

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const CapabilityError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const ResourceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const CertificationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
}
