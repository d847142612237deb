// Acceptance harness: one line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wecomp/wecomp.hpp"

using namespace wecomp;

namespace {

int failures = 0;

void report(int id, const std::string& desc, bool ok, const std::string& detail = "") {
    if (ok) {
        std::printf("PASS: criterion %d — %s\n", id, desc.c_str());
    } else {
        std::printf("FAIL: criterion %d — %s%s%s\n", id, desc.c_str(),
                    detail.empty() ? "" : ": ", detail.c_str());
        ++failures;
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Circuit random_basis_circuit(std::mt19937_64& rng) {
    Circuit c;
    c.width = 1 + int(rng() % 8);
    int n_gates = int(rng() % 41);
    int h_budget = 18;
    for (int i = 0; i < n_gates; ++i) {
        switch (rng() % 3) {
            case 0:
                if (c.width >= 2) {
                    int a = int(rng() % std::uint64_t(c.width));
                    int b = int(rng() % std::uint64_t(c.width - 1));
                    if (b >= a) ++b;
                    c.gates.push_back(Gate::cnot(a, b));
                }
                break;
            case 1:
                if (h_budget > 0) {
                    --h_budget;
                    c.gates.push_back(Gate::h(int(rng() % std::uint64_t(c.width))));
                }
                break;
            default:
                c.gates.push_back(Gate::t(int(rng() % std::uint64_t(c.width))));
                break;
        }
    }
    return c;
}

void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20260101);
    int bad = 0;
    double worst = 0;
    for (int trial = 0; trial < 500; ++trial) {
        Circuit c = random_basis_circuit(rng);
        ExactAmplitude ex = amplitude_exact(c);
        ApproxComplex exact = amplitude_to_complex(ex, 128);
        ApproxComplex sv = statevector_amplitude(c, 128);
        double diff = ApproxComplex::dist_upper(exact, sv).to_double();
        worst = std::max(worst, diff);
        if (!(diff < 1e-9)) ++bad;
    }
    double dt = seconds_since(t0);
    std::ostringstream detail;
    detail << bad << " mismatches, worst " << worst << ", " << dt << " s";
    report(1, "path-sum amplitude matches the statevector on 500 random circuits",
           bad == 0 && dt < 60.0, detail.str());
}

BoolCircuit random_bool_circuit(std::mt19937_64& rng) {
    BoolCircuit bc;
    bc.guesses = 1 + int(rng() % 7);
    int s = 1 + int(rng() % std::uint64_t(8 - bc.guesses));
    int n_inputs = int(rng() % 4);
    for (int i = 0; i < n_inputs; ++i) bc.inputs.push_back(rng() & 1);
    for (int j = 0; j < s; ++j) {
        auto ref = [&](int upto) {
            for (;;) {
                switch (rng() % 3) {
                    case 0:
                        if (!bc.inputs.empty())
                            return BoolRef{BoolRef::Kind::input,
                                           int(rng() % bc.inputs.size())};
                        break;
                    case 1:
                        return BoolRef{BoolRef::Kind::guess,
                                       int(rng() % std::uint64_t(bc.guesses))};
                    default:
                        if (upto > 0)
                            return BoolRef{BoolRef::Kind::gate,
                                           int(rng() % std::uint64_t(upto))};
                        break;
                }
            }
        };
        bc.gates.push_back(BoolGate{bool(rng() & 1), ref(j), ref(j)});
    }
    return bc;
}

void criterion_2() {
    std::mt19937_64 rng(20260102);
    int bad_gap = 0, bad_delta = 0;
    for (int trial = 0; trial < 100; ++trial) {
        BoolCircuit bc = random_bool_circuit(rng);
        long long brute = gap_bruteforce(bc);
        long long via = gap_via_weight_enumerator(bc);
        if (via != brute) ++bad_gap;
        long long delta = delta_bruteforce(build_f(bc, ZetaMode::combined));
        if (delta != (1LL << selector_count(bc)) * brute) ++bad_delta;
    }
    std::ostringstream detail;
    detail << bad_gap << " gap mismatches, " << bad_delta << " delta mismatches";
    report(2, "weight-enumerator gap equals brute force and Delta = 2^s' * gap",
           bad_gap == 0 && bad_delta == 0, detail.str());
}

void criterion_3() {
    std::mt19937_64 rng(20260103);
    int bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t vars = 1 + rng() % 10;
        PhasePolynomial f;
        for (std::size_t v = 0; v < vars; ++v)
            f.variable_names.push_back("v" + std::to_string(v + 1));
        int n_monos = 1 + int(rng() % 12);
        for (int m = 0; m < n_monos; ++m) {
            std::size_t deg = std::min<std::size_t>(vars, 1 + rng() % 4);
            if (rng() % 16 == 0) deg = 0;
            std::vector<std::uint32_t> mono;
            while (mono.size() < deg) {
                std::uint32_t v = std::uint32_t(rng() % vars);
                if (std::find(mono.begin(), mono.end(), v) == mono.end())
                    mono.push_back(v);
            }
            std::sort(mono.begin(), mono.end());
            f.toggle(std::move(mono));
        }
        long long delta = 0;
        for (std::uint32_t mask = 0; mask < (1u << vars); ++mask)
            delta += f.eval(mask) ? -1 : 1;
        ApproxComplex sv = statevector_amplitude(build_u_of_f(f), 128);
        double expect = std::ldexp(double(delta), -int(vars));
        double diff = std::hypot(sv.re().to_double() - expect, sv.im().to_double());
        if (!(diff < 1e-9)) ++bad;
    }
    report(3, "statevector amplitude of U(F) equals 2^-N * Delta on 100 random polynomials",
           bad == 0, std::to_string(bad) + " mismatches");
}

mpq_class random_point(std::mt19937_64& rng) {
    long num = long(rng() % 19) - 9;
    if (num == 0) num = 10;
    mpq_class q(num, long(1 + rng() % 9));
    q.canonicalize();
    return q;
}

void criterion_4() {
    std::mt19937_64 rng(20260104);
    int bad_direct = 0, bad_wreath = 0;
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t ka = 1 + rng() % 6;
        std::size_t kb = 1 + rng() % (12 - ka > 6 ? 6 : 12 - ka);
        LinearCode a = random_code(1 + rng() % 10, ka, rng());
        LinearCode b = random_code(1 + rng() % 10, kb, rng());
        WeightDistribution wa = weight_distribution(a, Semantics::multiset);
        WeightDistribution wb = weight_distribution(b, Semantics::multiset);
        WeightDistribution ws = weight_distribution(direct_sum(a, b), Semantics::multiset);
        std::vector<mpz_class> conv(wa.counts.size() + wb.counts.size() - 1, 0);
        for (std::size_t i = 0; i < wa.counts.size(); ++i)
            for (std::size_t j = 0; j < wb.counts.size(); ++j)
                conv[i + j] += wa.counts[i] * wb.counts[j];
        if (conv != ws.counts) ++bad_direct;
    }
    for (int trial = 0; trial < 50; ++trial) {
        LinearCode a = random_code(1 + rng() % 5, 1 + rng() % 4, rng());
        LinearCode b = random_code(1 + rng() % 5, 1 + rng() % 4, rng());
        LinearCode w = wreath_sum(a, b);
        WeightDistribution wb = weight_distribution(b, Semantics::multiset);
        bool ok = true;
        for (int p = 0; p < 5; ++p) {
            mpq_class q = random_point(rng);
            ok = ok && wreath_eval(a, wb, q) == evaluate(w, q, Semantics::multiset);
        }
        ok = ok && wreath_eval_omega(a, wb) == evaluate_at_omega(w, Semantics::multiset);
        if (!ok) ++bad_wreath;
    }
    std::ostringstream detail;
    detail << bad_direct << " direct-sum, " << bad_wreath << " wreath mismatches";
    report(4, "direct-sum product law and wreath closed form hold on 50 random pairs each",
           bad_direct == 0 && bad_wreath == 0, detail.str());
}

void criterion_5() {
    std::mt19937_64 rng(20260105);
    int bad = 0;
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 1 + rng() % 14;
        std::size_t d = 1 + rng() % std::min<std::size_t>(n, 10);
        LinearCode c = random_code(n, d, rng());
        WeightDistribution dist = weight_distribution(c);
        mpz_class m[4];
        for (std::size_t i = 0; i < dist.counts.size(); ++i) {
            if (i % 8 < 4)
                m[i % 8] += dist.counts[i];
            else
                m[i % 8 - 4] -= dist.counts[i];
        }
        for (std::size_t k : {1u, 9u, 17u}) {
            for (long s = 0; s < 4; ++s) {
                long a = (1 + 2 * s - long(n)) % 8;
                if (a <= 0) a += 8;
                CycInt lhs = amplified_eval_omega(dist, n, std::size_t(a), k);
                CycInt rhs;
                for (long j = 0; j < 4; ++j) {
                    long e = ((1 + 2 * (s - j)) % 8 + 8) % 8;
                    rhs += CycInt::integer(m[j]) * CycInt::omega_pow(j) *
                           (CycInt::integer(1) + CycInt::omega_pow(e)).pow(k);
                }
                if (!(lhs == rhs)) ++bad;
            }
        }
    }
    report(5, "the amplified-evaluation identity holds exactly for 50 random codes",
           bad == 0, std::to_string(bad) + " mismatches");
}

LinearCode random_full_rank(std::size_t n, std::size_t d, std::mt19937_64& rng) {
    for (;;) {
        LinearCode c = random_code(n, d, rng());
        if (rank(c.generator()) == d) return c;
    }
}

void criterion_6() {
    double a0 = alpha0();
    bool threshold_ok = a0 >= 0.88 && a0 < 0.89;

    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20260106);
    int bad = 0;
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 2 + rng() % 11;
        std::size_t d = 1 + rng() % n;
        LinearCode c = random_full_rank(n, d, rng);
        NoisyOracle oracle(c, 0.8, NoiseMode::adversarial_boundary, rng());
        if (recover_value_at_omega(c, oracle).recovered != evaluate_at_omega(c)) ++bad;
    }
    double dt = seconds_since(t0);
    std::ostringstream detail;
    detail << bad << " mismatches, " << dt << " s, alpha0 = " << a0;
    report(6, "omega recovery is exact for 30 random codes under boundary noise",
           threshold_ok && bad == 0 && dt < 10.0, detail.str());
}

void criterion_7() {
    std::mt19937_64 rng(20260107);
    int bad = 0;
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 1 + rng() % 10;
        std::size_t d = 1 + rng() % n;
        LinearCode c = random_code(n, d, rng());
        NoisyOracle oracle(c, 0.9, NoiseMode::adversarial_boundary, rng(),
                           NoisyOracle::Points::any);
        CoefficientRecovery rep = recover_coefficients(c, oracle);
        if (rep.recovered.counts != weight_distribution(c).counts ||
            !(rep.max_residual < 0.5))
            ++bad;
    }
    report(7, "coefficient recovery is exact for 20 random codes under boundary noise",
           bad == 0, std::to_string(bad) + " mismatches");
}

void criterion_8() {
    std::mt19937_64 rng(20260108);
    int bad = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng() % 20;
        std::size_t d = rng() % (std::min<std::size_t>(n, 12) + 1);
        LinearCode c = random_code(n, d, rng());
        WeightDistribution dist = weight_distribution(c);
        if (unpack_coefficients(pack_eval(c), n).counts != dist.counts) ++bad;
    }
    report(8, "pack/unpack round-trips the distribution on 200 random codes",
           bad == 0, std::to_string(bad) + " mismatches");
}

void criterion_9() {
    auto t0 = std::chrono::steady_clock::now();
    LinearCode big = random_code(64, 24, 20260109);
    WeightDistribution dist = weight_distribution(big, Semantics::codeword, 4);
    double dt = seconds_since(t0);
    bool size_ok = dist.total() <= (mpz_class(1) << 24);

    LinearCode sub = random_code(20, 10, 20260110);
    WeightDistribution fast = weight_distribution(sub, Semantics::multiset);
    std::vector<mpz_class> naive(21, 0);
    const BitMatrix& g = sub.generator();
    for (std::uint32_t mask = 0; mask < (1u << 10); ++mask) {
        BitVector acc(20);
        for (std::size_t r = 0; r < 10; ++r)
            if ((mask >> r) & 1u) acc.xor_with(g.row(r));
        ++naive[acc.popcount()];
    }
    bool match = fast.counts == naive;

    std::ostringstream detail;
    detail << dt << " s for [64,24]";
    report(9, "Gray-code enumeration is fast on [64,24] and matches naive on [20,10]",
           dt < 5.0 && size_ok && match, detail.str());
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures ? 1 : 0;
}
