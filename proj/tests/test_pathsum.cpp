#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "wecomp/pathsum.hpp"

using namespace wecomp;

namespace {

Circuit random_basis_circuit(std::mt19937_64& rng, int max_width, int max_gates,
                             int max_h) {
    Circuit c;
    c.width = 1 + int(rng() % max_width);
    int gates = 1 + int(rng() % max_gates);
    int h_left = max_h;
    for (int i = 0; i < gates; ++i) {
        int q = int(rng() % c.width);
        switch (rng() % 4) {
            case 0:
                if (h_left > 0) {
                    c.gates.push_back(Gate::h(q));
                    --h_left;
                    break;
                }
                [[fallthrough]];
            case 1: c.gates.push_back(Gate::t(q)); break;
            case 2: c.gates.push_back(Gate::tdg(q)); break;
            default: {
                if (c.width < 2) {
                    c.gates.push_back(Gate::t(q));
                    break;
                }
                int t = int(rng() % c.width);
                while (t == q) t = int(rng() % c.width);
                c.gates.push_back(Gate::cnot(q, t));
            }
        }
    }
    return c;
}

}  // namespace

TEST_CASE("compiling the H T H example", "[pathsum]") {
    Circuit c = parse_circuit_text("qubits 1\nH 0\nT 0\nH 0\n");
    CompiledAmplitude ca = compile(c);
    CHECK_FALSE(ca.zero);
    CHECK(ca.n_hadamards == 2);
    ExactAmplitude a = amplitude_exact(c);
    CHECK(a.value == CycInt(1, 1, 0, 0));
    CHECK(a.value.str() == "1+1*w");
    CHECK(a.half_power == 2);
    // (1 + w) / 2 numerically
    ApproxComplex z = amplitude_to_complex(a);
    CHECK(std::abs(z.re().to_double() - 0.8535533905932737) < 1e-15);
    CHECK(std::abs(z.im().to_double() - 0.3535533905932738) < 1e-15);
}

TEST_CASE("amplitudes of tiny circuits", "[pathsum]") {
    // T fixes |0>
    ExactAmplitude t = amplitude_exact(parse_circuit_text("qubits 1\nT 0\n"));
    CHECK(t.value == CycInt::integer(1));
    CHECK(t.half_power == 0);
    // CNOT fixes |00>
    ExactAmplitude cx = amplitude_exact(parse_circuit_text("qubits 2\nCNOT 0 1\n"));
    CHECK(cx.value == CycInt::integer(1));
    CHECK(cx.half_power == 0);
    // <0|H|0> = 1/sqrt(2): odd half_power exercises the sqrt(2) = w - w^3 route
    ExactAmplitude h = amplitude_exact(parse_circuit_text("qubits 1\nH 0\n"));
    CHECK(h.half_power == 1);
    ApproxComplex z = amplitude_to_complex(h);
    CHECK(std::abs(z.re().to_double() - std::sqrt(0.5)) < 1e-15);
    CHECK(std::abs(z.im().to_double()) < 1e-20);
}

TEST_CASE("H T^4 H vanishes through the enumerator, not infeasibility", "[pathsum]") {
    Circuit c = parse_circuit_text("qubits 1\nH 0\nT 0\nT 0\nT 0\nT 0\nH 0\n");
    CompiledAmplitude ca = compile(c);
    CHECK_FALSE(ca.zero);  // the affine system stays solvable
    ExactAmplitude a = amplitude_exact(c);
    CHECK(a.value.is_zero());  // w_C(omega) = 1 + omega^4 = 0
    ApproxComplex z = amplitude_to_complex(a);
    CHECK(z.re().to_double() == 0.0);
    CHECK(z.im().to_double() == 0.0);
}

TEST_CASE("collect_path_terms rejects unexpanded macros", "[pathsum]") {
    Circuit c;
    c.width = 2;
    c.gates = {Gate::phase_z({0, 1})};
    CHECK_THROWS_AS(collect_path_terms(c), InputError);
    CHECK_NOTHROW(compile(c));  // compile expands first
}

TEST_CASE("merging phase terms does not change the value", "[pathsum]") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 30; ++trial) {
        Circuit c = random_basis_circuit(rng, 5, 20, 10);
        CompiledAmplitude merged = compile(c, true);
        CompiledAmplitude raw = compile(c, false);
        CHECK(merged.n_hadamards == raw.n_hadamards);
        CHECK(compiled_value(merged) == compiled_value(raw));
    }
}

TEST_CASE("compiled amplitudes equal the explicit path sum", "[pathsum]") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 60; ++trial) {
        Circuit c = random_basis_circuit(rng, 6, 24, 12);
        ExactAmplitude via_code = amplitude_exact(c);
        ExactAmplitude via_paths = amplitude_bruteforce_paths(c);
        CHECK(via_code.half_power == via_paths.half_power);
        CHECK(via_code.value == via_paths.value);
    }
}

TEST_CASE("compiled amplitudes match the statevector", "[pathsum]") {
    std::mt19937_64 rng(31415);
    for (int trial = 0; trial < 25; ++trial) {
        Circuit c = random_basis_circuit(rng, 6, 30, 14);
        ApproxComplex exact = amplitude_to_complex(amplitude_exact(c));
        ApproxComplex sv = statevector_amplitude(c);
        CHECK(ApproxComplex::dist_upper(exact, sv).to_double() < 1e-25);
    }
}
