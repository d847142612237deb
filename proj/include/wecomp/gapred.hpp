#pragma once

// Counting gaps of Boolean circuits via phase polynomials. A circuit is a
// straight line of AND/XOR gates over fixed input bits and q guess bits; its
// gap is #(guess assignments with output 0) - #(with output 1). The circuit
// is encoded as a degree-<=4 polynomial F with one selector variable per gate
// plus one for the output condition, so that Delta(F) = 2^(s+1) * gap, and
// Delta(F) in turn is an exactly scaled circuit amplitude.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wecomp/errors.hpp"
#include "wecomp/pathsum.hpp"
#include "wecomp/phase_poly.hpp"

namespace wecomp {

struct BoolRef {
    enum class Kind { input, guess, gate };
    Kind kind;
    int index;  ///< 0-based

    bool operator==(const BoolRef&) const = default;
};

struct BoolGate {
    bool is_and;  ///< false = XOR
    BoolRef a, b;

    bool operator==(const BoolGate&) const = default;
};

struct BoolCircuit {
    std::vector<bool> inputs;
    int guesses = 0;
    std::vector<BoolGate> gates;  ///< gate j defines z_(j+1); output is the last z

    bool operator==(const BoolCircuit&) const = default;
};

inline void validate(const BoolCircuit& bc) {
    if (bc.gates.empty()) throw InputError("circuit needs at least one gate");
    for (std::size_t j = 0; j < bc.gates.size(); ++j) {
        for (const BoolRef* r : {&bc.gates[j].a, &bc.gates[j].b}) {
            switch (r->kind) {
                case BoolRef::Kind::input:
                    if (r->index < 0 || std::size_t(r->index) >= bc.inputs.size())
                        throw InputError("input reference out of range");
                    break;
                case BoolRef::Kind::guess:
                    if (r->index < 0 || r->index >= bc.guesses)
                        throw InputError("guess reference out of range");
                    break;
                case BoolRef::Kind::gate:
                    if (r->index < 0 || std::size_t(r->index) >= j)
                        throw InputError("gate may reference only earlier gates");
                    break;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Text format:
//   inputs 0110        (bitstring; bare "inputs" for none)
//   guesses 2
//   AND u1 u2          (defines z1; operands x<i>, u<i>, z<i>, 1-based)
//   XOR z1 x1          (defines z2; the last line is the output)
// '#' comments and blank lines are skipped.

inline BoolCircuit parse_bool_circuit(std::istream& in) {
    auto next_line = [&](std::string& line) -> bool {
        while (std::getline(in, line)) {
            if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
            std::istringstream probe(line);
            std::string tok;
            if (probe >> tok) return true;
        }
        return false;
    };
    BoolCircuit bc;
    std::string line;
    if (!next_line(line)) throw InputError("missing 'inputs' line");
    {
        std::istringstream ls(line);
        std::string kw, bits;
        ls >> kw;
        if (kw != "inputs") throw InputError("first line must be: inputs <bitstring>");
        if (ls >> bits)
            for (char c : bits) {
                if (c != '0' && c != '1') throw InputError("inputs must be a 0/1 string");
                bc.inputs.push_back(c == '1');
            }
    }
    if (!next_line(line)) throw InputError("missing 'guesses' line");
    {
        std::istringstream ls(line);
        std::string kw;
        long q = -1;
        if (!(ls >> kw >> q) || kw != "guesses" || q < 0)
            throw InputError("second line must be: guesses <q>");
        bc.guesses = int(q);
    }
    auto parse_ref = [&](const std::string& tok) -> BoolRef {
        if (tok.size() < 2) throw InputError("bad operand: " + tok);
        char c = tok[0];
        long idx = 0;
        try {
            idx = std::stol(tok.substr(1));
        } catch (...) {
            throw InputError("bad operand: " + tok);
        }
        if (idx < 1) throw InputError("operand indices are 1-based: " + tok);
        switch (c) {
            case 'x': return {BoolRef::Kind::input, int(idx - 1)};
            case 'u': return {BoolRef::Kind::guess, int(idx - 1)};
            case 'z': return {BoolRef::Kind::gate, int(idx - 1)};
            default: throw InputError("operands must start with x, u or z: " + tok);
        }
    };
    while (next_line(line)) {
        std::istringstream ls(line);
        std::string op, ta, tb, extra;
        if (!(ls >> op >> ta >> tb) || (ls >> extra))
            throw InputError("gate lines must be: AND|XOR <a> <b>");
        if (op != "AND" && op != "XOR") throw InputError("unknown gate: " + op);
        bc.gates.push_back({op == "AND", parse_ref(ta), parse_ref(tb)});
    }
    validate(bc);
    return bc;
}

inline BoolCircuit parse_bool_circuit_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_bool_circuit(in);
}

inline std::string bool_circuit_to_text(const BoolCircuit& bc) {
    std::string out = "inputs ";
    for (bool b : bc.inputs) out += b ? '1' : '0';
    out += "\nguesses " + std::to_string(bc.guesses) + "\n";
    for (const auto& g : bc.gates) {
        auto ref = [](const BoolRef& r) {
            char c = r.kind == BoolRef::Kind::input ? 'x'
                   : r.kind == BoolRef::Kind::guess ? 'u' : 'z';
            return std::string(1, c) + std::to_string(r.index + 1);
        };
        out += std::string(g.is_and ? "AND" : "XOR") + " " + ref(g.a) + " " + ref(g.b) + "\n";
    }
    return out;
}

inline long long gap_bruteforce(const BoolCircuit& bc) {
    validate(bc);
    if (bc.guesses > 24) throw ResourceError("gap enumeration limited to 24 guesses");
    long long acc = 0;
    std::uint64_t total = std::uint64_t{1} << bc.guesses;
    std::vector<bool> z(bc.gates.size());
    for (std::uint64_t u = 0; u < total; ++u) {
        auto value = [&](const BoolRef& r) -> bool {
            switch (r.kind) {
                case BoolRef::Kind::input: return bc.inputs[std::size_t(r.index)];
                case BoolRef::Kind::guess: return (u >> r.index) & 1;
                default: return z[std::size_t(r.index)];
            }
        };
        for (std::size_t j = 0; j < bc.gates.size(); ++j) {
            bool a = value(bc.gates[j].a), b = value(bc.gates[j].b);
            z[j] = bc.gates[j].is_and ? (a && b) : (a != b);
        }
        acc += z.back() ? -1 : 1;
    }
    return acc;
}

enum class ZetaMode { f0, f1, combined };

inline int selector_count(const BoolCircuit& bc) { return int(bc.gates.size()) + 1; }

/// Builds the selector polynomial. Variables are laid out as
/// u_1..u_q, z_1..z_s, v_0..v_s, and (combined mode only) w.
/// F^zeta = sum_k v_k (z_k + gate_k(...)) + v_0 (z_s + zeta); the combined
/// polynomial is F^0 + w v_0 + w, giving Delta = Delta(F^0) - Delta(F^1).
inline PhasePolynomial build_f(const BoolCircuit& bc, ZetaMode mode) {
    validate(bc);
    int q = bc.guesses;
    int s = int(bc.gates.size());
    PhasePolynomial f;
    for (int i = 1; i <= q; ++i) f.variable_names.push_back("u" + std::to_string(i));
    for (int i = 1; i <= s; ++i) f.variable_names.push_back("z" + std::to_string(i));
    for (int i = 0; i <= s; ++i) f.variable_names.push_back("v" + std::to_string(i));
    if (mode == ZetaMode::combined) f.variable_names.push_back("w");

    auto u_var = [&](int i) { return std::uint32_t(i); };
    auto z_var = [&](int i) { return std::uint32_t(q + i); };
    auto v_var = [&](int i) { return std::uint32_t(q + s + i); };
    std::uint32_t w_var = std::uint32_t(q + 2 * s + 1);

    // Either a constant bit or a variable index.
    struct Operand {
        bool is_const;
        bool value;
        std::uint32_t var;
    };
    auto resolve = [&](const BoolRef& r) -> Operand {
        switch (r.kind) {
            case BoolRef::Kind::input: return {true, bc.inputs[std::size_t(r.index)], 0};
            case BoolRef::Kind::guess: return {false, false, u_var(r.index)};
            default: return {false, false, z_var(r.index)};
        }
    };
    auto add_sorted = [&](std::vector<std::uint32_t> m) {
        std::sort(m.begin(), m.end());
        m.erase(std::unique(m.begin(), m.end()), m.end());
        f.toggle(std::move(m));
    };

    for (int j = 0; j < s; ++j) {
        std::uint32_t v = v_var(j + 1);
        f.toggle({v, z_var(j)});
        Operand a = resolve(bc.gates[std::size_t(j)].a);
        Operand b = resolve(bc.gates[std::size_t(j)].b);
        if (bc.gates[std::size_t(j)].is_and) {
            if (a.is_const && b.is_const) {
                if (a.value && b.value) f.toggle({v});
            } else if (a.is_const || b.is_const) {
                const Operand& cst = a.is_const ? a : b;
                const Operand& var = a.is_const ? b : a;
                if (cst.value) add_sorted({v, var.var});
            } else {
                add_sorted({v, a.var, b.var});
            }
        } else {
            for (const Operand* o : {&a, &b}) {
                if (o->is_const) {
                    if (o->value) f.toggle({v});
                } else {
                    add_sorted({v, o->var});
                }
            }
        }
    }
    f.toggle({v_var(0), z_var(s - 1)});
    if (mode == ZetaMode::f1) f.toggle({v_var(0)});
    if (mode == ZetaMode::combined) {
        add_sorted({w_var, v_var(0)});
        f.toggle({w_var});
    }
    return f;
}

/// Gap through the full pipeline: combined F, U(F), path-sum compilation,
/// exact enumerator at omega, then exact division by the selector scaling.
inline long long gap_via_weight_enumerator(const BoolCircuit& bc, unsigned threads = 0) {
    validate(bc);
    PhasePolynomial f = build_f(bc, ZetaMode::combined);
    long nvars = long(f.variable_names.size());
    if (nvars > 18) throw ResourceError("weight-enumerator gap limited to 18 F variables");
    Circuit u = build_u_of_f(f);
    ExactAmplitude amp = amplitude_exact(u, threads);
    if (amp.half_power % 2 != 0)
        throw InternalError("U(F) path count must be even");
    // amplitude * 2^nvars = Delta(F) = 2^(s+1) * gap
    long shift = amp.half_power / 2 - nvars + selector_count(bc);
    const mpz_class& raw = amp.value.as_integer();
    if (shift < 0) throw InternalError("negative scaling exponent");
    if (mpz_divisible_2exp_p(raw.get_mpz_t(), static_cast<mp_bitcnt_t>(shift)) == 0)
        throw InternalError("amplitude is not divisible by the selector scaling");
    mpz_class gap = raw >> static_cast<mp_bitcnt_t>(shift);
    if (!gap.fits_slong_p()) throw InternalError("gap out of range");
    return gap.get_si();
}

}  // namespace wecomp
