#pragma once

// Path-sum compilation of {CNOT, H, T, TDG} circuits. Walking the gates
// keeps one affine form per qubit over the path variables (one fresh variable
// per Hadamard) and collects phase terms mult * l(u) with mult in Z_8, using
// (-1)^(ab) = i^(a xor b) * i^(-a) * i^(-b) to linearize the Hadamard phase.
// Imposing <0...0| forces every output form to zero; substituting the affine
// solution and folding constants leaves a set of linear phase terms whose
// coefficient columns generate a binary code C with
//   <0|U|0> = 2^(-N/2) * omega^g * 2^m * w_C(omega).

#include <map>
#include <vector>

#include "wecomp/circuits.hpp"
#include "wecomp/codes.hpp"
#include "wecomp/cyclotomic.hpp"
#include "wecomp/errors.hpp"
#include "wecomp/gf2.hpp"

namespace wecomp {

struct PathTerm {
    int mult;         ///< in 1..7
    AffineForm form;  ///< argument of omega^(mult * form)
};

struct GateWalk {
    int n_h = 0;
    std::vector<AffineForm> forms;
    std::vector<PathTerm> terms;
};

/// Single pass over a primitive circuit; PHASE_Z must be expanded first.
inline GateWalk collect_path_terms(const Circuit& c) {
    validate(c);
    int total_h = 0;
    for (const auto& g : c.gates)
        if (g.kind == GateKind::h) ++total_h;
        else if (g.kind == GateKind::phase_z)
            throw InputError("path-sum walk requires a macro-expanded circuit");
    GateWalk walk;
    walk.forms.assign(std::size_t(c.width), AffineForm(std::size_t(total_h)));
    for (const auto& g : c.gates) {
        switch (g.kind) {
            case GateKind::cnot:
                walk.forms[std::size_t(g.qubits[1])].xor_with(
                    walk.forms[std::size_t(g.qubits[0])]);
                break;
            case GateKind::t:
                walk.terms.push_back({1, walk.forms[std::size_t(g.qubits[0])]});
                break;
            case GateKind::tdg:
                walk.terms.push_back({7, walk.forms[std::size_t(g.qubits[0])]});
                break;
            case GateKind::h: {
                AffineForm& b = walk.forms[std::size_t(g.qubits[0])];
                AffineForm fresh{std::size_t(total_h)};
                fresh.coeffs.set(std::size_t(walk.n_h), true);
                AffineForm mixed = b;
                mixed.xor_with(fresh);
                walk.terms.push_back({2, mixed});
                walk.terms.push_back({6, b});
                walk.terms.push_back({6, fresh});
                b = fresh;
                ++walk.n_h;
                break;
            }
            case GateKind::phase_z: break;  // unreachable
        }
    }
    return walk;
}

struct CompiledAmplitude {
    long n_hadamards = 0;      ///< N: amplitude = 2^(-N/2) * omega^g * 2^m * w_C(omega)
    int phase_exp = 0;         ///< g in 0..7
    long multiplicity_exp = 0; ///< m
    bool zero = false;         ///< output constraints infeasible
    LinearCode code;

    bool operator==(const CompiledAmplitude&) const = default;
};

/// Exact amplitude as value / 2^(half_power / 2).
struct ExactAmplitude {
    CycInt value;
    long half_power = 0;

    bool operator==(const ExactAmplitude&) const = default;
};

inline CompiledAmplitude compile(const Circuit& circuit, bool merge_terms = true) {
    Circuit expanded = expand_macros(circuit);
    GateWalk walk = collect_path_terms(expanded);
    std::size_t nvars = std::size_t(walk.n_h);

    BitMatrix constraints(std::size_t(expanded.width), nvars);
    BitVector rhs(std::size_t(expanded.width));
    for (std::size_t q = 0; q < walk.forms.size(); ++q) {
        constraints.set_row(q, walk.forms[q].coeffs);
        rhs.set(q, walk.forms[q].constant);
    }
    CompiledAmplitude out;
    out.n_hadamards = walk.n_h;
    AffineSolution sol = solve_affine(constraints, rhs);
    if (!sol.feasible) {
        out.zero = true;
        return out;
    }
    std::size_t free_dim = sol.kernel.size();

    int g = 0;
    std::map<BitVector, int> merged;
    std::vector<std::pair<BitVector, int>> kept;
    for (const auto& term : walk.terms) {
        bool base = term.form.constant ^ term.form.coeffs.dot(sol.particular);
        BitVector lin(free_dim);
        for (std::size_t i = 0; i < free_dim; ++i)
            if (term.form.coeffs.dot(sol.kernel[i])) lin.set(i, true);
        if (!lin.any()) {
            if (base) g = (g + term.mult) % 8;
            continue;
        }
        int mult = term.mult;
        if (base) {
            // omega^(c (1 xor l)) = omega^c * omega^((8-c) l)
            g = (g + mult) % 8;
            mult = 8 - mult;
        }
        if (merge_terms)
            merged[lin] = (merged[lin] + mult) % 8;
        else
            kept.emplace_back(std::move(lin), mult);
    }
    if (merge_terms) {
        kept.clear();
        for (const auto& [lin, mult] : merged)
            if (mult != 0) kept.emplace_back(lin, mult);
    }

    std::size_t total_cols = 0;
    for (const auto& [lin, mult] : kept) total_cols += std::size_t(mult);
    BitMatrix gen(free_dim, total_cols);
    std::size_t col = 0;
    for (const auto& [lin, mult] : kept) {
        for (int copy = 0; copy < mult; ++copy, ++col)
            for (std::size_t r = 0; r < free_dim; ++r)
                if (lin.get(r)) gen.set(r, col, true);
    }
    out.phase_exp = g;
    out.code = LinearCode(std::move(gen));
    out.multiplicity_exp = long(free_dim) - long(rank(out.code.generator()));
    return out;
}

/// omega^g * 2^m * w_C(omega), i.e. the amplitude scaled by 2^(N/2).
inline CycInt compiled_value(const CompiledAmplitude& ca, unsigned threads = 0) {
    if (ca.zero) return {};
    mpz_class two_m;
    mpz_ui_pow_ui(two_m.get_mpz_t(), 2, static_cast<unsigned long>(ca.multiplicity_exp));
    return CycInt::integer(two_m) * CycInt::omega_pow(ca.phase_exp) *
           evaluate_at_omega(ca.code, Semantics::codeword, threads);
}

inline ExactAmplitude amplitude_exact(const Circuit& c, unsigned threads = 0) {
    CompiledAmplitude ca = compile(c);
    return {compiled_value(ca, threads), ca.n_hadamards};
}

/// Independent check: enumerate all path variable assignments directly.
inline ExactAmplitude amplitude_bruteforce_paths(const Circuit& c) {
    Circuit expanded = expand_macros(c);
    GateWalk walk = collect_path_terms(expanded);
    if (walk.n_h > 24) throw ResourceError("path enumeration limited to 24 variables");
    struct Packed {
        std::uint32_t mask;
        bool constant;
        int mult;
    };
    auto pack = [&](const AffineForm& f, int mult) {
        Packed p{0, f.constant, mult};
        for (std::size_t i = 0; i < f.coeffs.size(); ++i)
            if (f.coeffs.get(i)) p.mask |= std::uint32_t{1} << i;
        return p;
    };
    std::vector<Packed> outputs, phases;
    for (const auto& f : walk.forms) outputs.push_back(pack(f, 0));
    for (const auto& t : walk.terms) phases.push_back(pack(t.form, t.mult));
    std::array<std::uint64_t, 8> counts{};
    std::uint64_t total = std::uint64_t{1} << walk.n_h;
    for (std::uint64_t u = 0; u < total; ++u) {
        bool ok = true;
        for (const auto& o : outputs) {
            bool v = (std::popcount(std::uint32_t(u) & o.mask) & 1) ^ int(o.constant);
            if (v) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        int phase = 0;
        for (const auto& p : phases)
            if ((std::popcount(std::uint32_t(u) & p.mask) & 1) ^ int(p.constant))
                phase += p.mult;
        counts[phase & 7] += 1;
    }
    auto diff = [&](int i) -> mpz_class {
        mpz_class a(static_cast<unsigned long>(counts[std::size_t(i)]));
        mpz_class b(static_cast<unsigned long>(counts[std::size_t(i + 4)]));
        return a - b;
    };
    CycInt value = {diff(0), diff(1), diff(2), diff(3)};
    return {value, walk.n_h};
}

/// Numeric value of an exact amplitude. Multiplying by sqrt(2) = w - w^3
/// inside Z[w] keeps the only rounding in to_complex.
inline ApproxComplex amplitude_to_complex(const ExactAmplitude& a, mpfr_prec_t prec = 128) {
    CycInt v = a.value;
    long halves = a.half_power;
    if (halves % 2 != 0) {
        v = v * (CycInt::omega_pow(1) - CycInt::omega_pow(3));
        ++halves;
    }
    return ApproxComplex::mul_2si(to_complex(v, prec), -halves / 2);
}

}  // namespace wecomp
