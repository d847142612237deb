#pragma once

// Circuit IR over the gate set {CNOT, H, T, TDG} plus multi-controlled phase
// markers PHASE_Z(J) that flip the sign on basis states where all qubits in J
// are 1. PHASE_Z is a convenience layer: expand_macros rewrites it exactly
// into the primitive set (one shared ancilla for degree-4 monomials).

#include <algorithm>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wecomp/errors.hpp"
#include "wecomp/phase_poly.hpp"
#include "wecomp/real.hpp"

namespace wecomp {

enum class GateKind { cnot, h, t, tdg, phase_z };

struct Gate {
    GateKind kind;
    std::vector<int> qubits;

    static Gate cnot(int c, int t) { return {GateKind::cnot, {c, t}}; }
    static Gate h(int q) { return {GateKind::h, {q}}; }
    static Gate t(int q) { return {GateKind::t, {q}}; }
    static Gate tdg(int q) { return {GateKind::tdg, {q}}; }
    static Gate phase_z(std::vector<int> qs) {
        std::sort(qs.begin(), qs.end());
        return {GateKind::phase_z, std::move(qs)};
    }

    bool operator==(const Gate&) const = default;
};

struct Circuit {
    int width = 0;
    std::vector<Gate> gates;

    bool operator==(const Circuit&) const = default;
};

inline void validate(const Circuit& c) {
    for (const auto& g : c.gates) {
        for (int q : g.qubits)
            if (q < 0 || q >= c.width) throw InputError("qubit index out of range");
        switch (g.kind) {
            case GateKind::cnot:
                if (g.qubits.size() != 2 || g.qubits[0] == g.qubits[1])
                    throw InputError("CNOT needs two distinct qubits");
                break;
            case GateKind::h:
            case GateKind::t:
            case GateKind::tdg:
                if (g.qubits.size() != 1) throw InputError("single-qubit gate needs one qubit");
                break;
            case GateKind::phase_z: {
                if (g.qubits.size() > 4)
                    throw InputError("PHASE_Z supports at most 4 qubits");
                auto qs = g.qubits;
                std::sort(qs.begin(), qs.end());
                if (std::adjacent_find(qs.begin(), qs.end()) != qs.end())
                    throw InputError("PHASE_Z qubits must be distinct");
                break;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Text format: header "qubits W", then one gate per line with 0-based
// indices: "H 0", "T 1", "TDG 2", "CNOT 0 1", "PZ 0 1 2". '#' comments and
// blank lines are skipped. "PZ" with no arguments is the global phase -1.

inline Circuit parse_circuit(std::istream& in) {
    auto next_line = [&](std::string& line) -> bool {
        while (std::getline(in, line)) {
            if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
            std::istringstream probe(line);
            std::string tok;
            if (probe >> tok) return true;
        }
        return false;
    };
    std::string line;
    if (!next_line(line)) throw InputError("missing circuit header line");
    std::istringstream header(line);
    std::string kw;
    long width = -1;
    if (!(header >> kw >> width) || kw != "qubits" || width < 0)
        throw InputError("circuit header must be: qubits W");
    Circuit c;
    c.width = int(width);
    while (next_line(line)) {
        std::istringstream ls(line);
        std::string op;
        ls >> op;
        std::vector<int> args;
        long q;
        while (ls >> q) args.push_back(int(q));
        if (!ls.eof()) throw InputError("malformed gate line: " + line);
        if (op == "H" && args.size() == 1)
            c.gates.push_back(Gate::h(args[0]));
        else if (op == "T" && args.size() == 1)
            c.gates.push_back(Gate::t(args[0]));
        else if (op == "TDG" && args.size() == 1)
            c.gates.push_back(Gate::tdg(args[0]));
        else if (op == "CNOT" && args.size() == 2)
            c.gates.push_back(Gate::cnot(args[0], args[1]));
        else if (op == "PZ")
            c.gates.push_back(Gate::phase_z(args));
        else
            throw InputError("unknown gate line: " + line);
    }
    validate(c);
    return c;
}

inline Circuit parse_circuit_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_circuit(in);
}

inline std::string circuit_to_text(const Circuit& c) {
    std::string out = "qubits " + std::to_string(c.width) + "\n";
    for (const auto& g : c.gates) {
        switch (g.kind) {
            case GateKind::cnot: out += "CNOT"; break;
            case GateKind::h: out += "H"; break;
            case GateKind::t: out += "T"; break;
            case GateKind::tdg: out += "TDG"; break;
            case GateKind::phase_z: out += "PZ"; break;
        }
        for (int q : g.qubits) out += " " + std::to_string(q);
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact PHASE_Z expansions. Degree 1: Z = T^4. Degree 2: controlled-Z from
// T^2 (= S) conjugation: S_a S_b CNOT(a,b) Sdg_b CNOT(a,b). Degree 3: the
// 7-T-gate CCZ phase network. Degree 4: borrow one shared ancilla, compute
// ab into it with Toffoli = H CCZ H, apply CCZ(anc, c, d), uncompute.

namespace detail {

inline void emit_z(std::vector<Gate>& out, int q) {
    for (int i = 0; i < 4; ++i) out.push_back(Gate::t(q));
}

inline void emit_cz(std::vector<Gate>& out, int a, int b) {
    out.push_back(Gate::t(a));
    out.push_back(Gate::t(a));
    out.push_back(Gate::t(b));
    out.push_back(Gate::t(b));
    out.push_back(Gate::cnot(a, b));
    out.push_back(Gate::tdg(b));
    out.push_back(Gate::tdg(b));
    out.push_back(Gate::cnot(a, b));
}

inline void emit_ccz(std::vector<Gate>& out, int a, int b, int c) {
    out.push_back(Gate::t(a));
    out.push_back(Gate::t(b));
    out.push_back(Gate::t(c));
    out.push_back(Gate::cnot(a, c));
    out.push_back(Gate::tdg(c));
    out.push_back(Gate::cnot(b, c));
    out.push_back(Gate::t(c));
    out.push_back(Gate::cnot(a, c));
    out.push_back(Gate::tdg(c));
    out.push_back(Gate::cnot(b, c));
    out.push_back(Gate::cnot(a, b));
    out.push_back(Gate::tdg(b));
    out.push_back(Gate::cnot(a, b));
}

inline void emit_toffoli(std::vector<Gate>& out, int a, int b, int target) {
    out.push_back(Gate::h(target));
    emit_ccz(out, a, b, target);
    out.push_back(Gate::h(target));
}

}  // namespace detail

/// Rewrites every PHASE_Z into {CNOT, H, T, TDG}. Adds one ancilla qubit
/// (index = original width) shared by all degree-4 monomials; it starts and
/// ends in |0>.
inline Circuit expand_macros(const Circuit& c) {
    validate(c);
    bool needs_ancilla = false;
    for (const auto& g : c.gates)
        if (g.kind == GateKind::phase_z && g.qubits.size() == 4) needs_ancilla = true;
    Circuit out;
    out.width = c.width + (needs_ancilla ? 1 : 0);
    int anc = c.width;
    for (const auto& g : c.gates) {
        if (g.kind != GateKind::phase_z) {
            out.gates.push_back(g);
            continue;
        }
        const auto& qs = g.qubits;
        switch (qs.size()) {
            case 0: {
                // Global -1 as (ZX)^2 on qubit 0, with X = H Z H.
                if (c.width == 0)
                    throw InputError("global phase marker needs at least one qubit");
                for (int rep = 0; rep < 2; ++rep) {
                    detail::emit_z(out.gates, 0);
                    out.gates.push_back(Gate::h(0));
                    detail::emit_z(out.gates, 0);
                    out.gates.push_back(Gate::h(0));
                }
                break;
            }
            case 1: detail::emit_z(out.gates, qs[0]); break;
            case 2: detail::emit_cz(out.gates, qs[0], qs[1]); break;
            case 3: detail::emit_ccz(out.gates, qs[0], qs[1], qs[2]); break;
            case 4:
                detail::emit_toffoli(out.gates, qs[0], qs[1], anc);
                detail::emit_ccz(out.gates, anc, qs[2], qs[3]);
                detail::emit_toffoli(out.gates, qs[0], qs[1], anc);
                break;
            default: throw InputError("PHASE_Z supports at most 4 qubits");
        }
    }
    return out;
}

/// Diagonal-conjugation circuit for a phase polynomial: H on every variable
/// qubit, one PHASE_Z per monomial, H again. <0|U(F)|0> = 2^-N * Delta(F).
inline Circuit build_u_of_f(const PhasePolynomial& f) {
    int n = int(f.variable_names.size());
    Circuit c;
    c.width = n;
    if (f.monomials.count({}) && n == 0)
        throw InputError("constant phase polynomial needs at least one variable qubit");
    for (const auto& m : f.monomials)
        if (m.size() > 4) throw InputError("phase polynomial degree exceeds 4");
    for (int q = 0; q < n; ++q) c.gates.push_back(Gate::h(q));
    for (const auto& m : f.monomials) {
        std::vector<int> qs;
        for (std::uint32_t v : m) {
            if (v >= std::uint32_t(n)) throw InternalError("monomial variable out of range");
            qs.push_back(int(v));
        }
        c.gates.push_back(Gate::phase_z(std::move(qs)));
    }
    for (int q = 0; q < n; ++q) c.gates.push_back(Gate::h(q));
    return c;
}

// ---------------------------------------------------------------------------
// Dense statevector reference: exact basis permutations and sign flips, MPFR
// arithmetic elsewhere, with a certified 2-norm error bound accumulated per
// rounding gate.

constexpr int kMaxStatevectorWidth = 14;

inline ApproxComplex statevector_amplitude(const Circuit& c, mpfr_prec_t prec = 128) {
    validate(c);
    if (c.width > kMaxStatevectorWidth)
        throw ResourceError("statevector limited to 14 qubits");
    std::size_t dim = std::size_t{1} << c.width;
    std::vector<Real> re(dim, Real(prec)), im(dim, Real(prec));
    mpfr_set_ui(re[0].raw(), 1, MPFR_RNDN);
    Real h(prec);
    mpfr_sqrt_ui(h.raw(), 2, MPFR_RNDN);
    mpfr_div_ui(h.raw(), h.raw(), 2, MPFR_RNDN);
    long rounding_gates = 0;
    for (const auto& g : c.gates) {
        switch (g.kind) {
            case GateKind::h: {
                std::size_t bit = std::size_t{1} << g.qubits[0];
                for (std::size_t i = 0; i < dim; ++i) {
                    if (i & bit) continue;
                    std::size_t j = i | bit;
                    Real sr = Real::add(re[i], re[j]);
                    Real dr = Real::sub(re[i], re[j]);
                    Real si = Real::add(im[i], im[j]);
                    Real di = Real::sub(im[i], im[j]);
                    re[i] = Real::mul(sr, h);
                    re[j] = Real::mul(dr, h);
                    im[i] = Real::mul(si, h);
                    im[j] = Real::mul(di, h);
                }
                ++rounding_gates;
                break;
            }
            case GateKind::t:
            case GateKind::tdg: {
                bool dagger = g.kind == GateKind::tdg;
                std::size_t bit = std::size_t{1} << g.qubits[0];
                for (std::size_t i = 0; i < dim; ++i) {
                    if (!(i & bit)) continue;
                    Real a = re[i], b = im[i];
                    if (!dagger) {
                        re[i] = Real::mul(Real::sub(a, b), h);
                        im[i] = Real::mul(Real::add(a, b), h);
                    } else {
                        re[i] = Real::mul(Real::add(a, b), h);
                        im[i] = Real::mul(Real::sub(b, a), h);
                    }
                }
                ++rounding_gates;
                break;
            }
            case GateKind::cnot: {
                std::size_t cbit = std::size_t{1} << g.qubits[0];
                std::size_t tbit = std::size_t{1} << g.qubits[1];
                for (std::size_t i = 0; i < dim; ++i)
                    if ((i & cbit) && !(i & tbit)) {
                        std::swap(re[i], re[i | tbit]);
                        std::swap(im[i], im[i | tbit]);
                    }
                break;
            }
            case GateKind::phase_z: {
                std::size_t mask = 0;
                for (int q : g.qubits) mask |= std::size_t{1} << q;
                for (std::size_t i = 0; i < dim; ++i)
                    if ((i & mask) == mask) {
                        mpfr_neg(re[i].raw(), re[i].raw(), MPFR_RNDN);
                        mpfr_neg(im[i].raw(), im[i].raw(), MPFR_RNDN);
                    }
                break;
            }
        }
    }
    // Each rounding gate perturbs the unit-norm state by at most a few ulps
    // in 2-norm; 2^(3-prec) per gate is a safe envelope.
    Real err(detail::kErrPrec);
    if (rounding_gates > 0) {
        mpfr_set_si_2exp(err.raw(), rounding_gates, 3 - prec, MPFR_RNDU);
    }
    return {re[0], im[0], err};
}

}  // namespace wecomp
