#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wecomp/amplify.hpp"

using namespace wecomp;

namespace {

LinearCode c23() { return parse_code_text("3 2\n110\n011\n"); }
LinearCode rep3() { return parse_code_text("3 1\n111\n"); }

LinearCode random_full_rank(std::size_t n, std::size_t d, std::uint64_t seed) {
    for (std::uint64_t s = seed;; ++s) {
        LinearCode c = random_code(n, d, s);
        if (rank(c.generator()) == d) return c;
    }
}

}  // namespace

TEST_CASE("the hardness threshold", "[amplify]") {
    double a0 = alpha0();
    CHECK(a0 >= 0.88);
    CHECK(a0 < 0.89);
    CHECK(std::abs(a0 - log2_abs_one_plus_omega(128).to_double()) < 1e-12);
}

TEST_CASE("choosing the amplification power", "[amplify]") {
    CHECK(choose_k(3, 2, 0.8, 8, 0.05) == 153);
    CHECK(choose_k(3, 2, 0.8, 6, 0.05) == 137);
    CHECK(choose_k(1, 1, 1e-9, 8, 0.05) == 9);  // tiny alpha still needs the tan decay
    for (long k : {choose_k(3, 2, 0.8, 8, 0.05), choose_k(12, 6, 0.8, 8, 0.05)})
        CHECK(k % 8 == 1);
    CHECK_THROWS_AS(choose_k(3, 2, 0.9, 8, 0.05), InputError);  // 0.9 > alpha0
    CHECK_THROWS_AS(choose_k(3, 2, -0.1, 8, 0.05), InputError);
}

TEST_CASE("oracle noise is deterministic and bounded", "[amplify]") {
    NoisyOracle a(c23(), 0.8, NoiseMode::adversarial_boundary, 77);
    NoisyOracle b(c23(), 0.8, NoiseMode::adversarial_boundary, 77);
    NoisyOracle other(c23(), 0.8, NoiseMode::adversarial_boundary, 78);
    ApproxComplex qa = a.query_amplified(6, 9, 256);
    ApproxComplex qb = b.query_amplified(6, 9, 256);
    CHECK(qa.re().cmp(qb.re()) == 0);
    CHECK(qa.im().cmp(qb.im()) == 0);
    ApproxComplex qo = other.query_amplified(6, 9, 256);
    CHECK((qa.re().cmp(qo.re()) != 0 || qa.im().cmp(qo.im()) != 0));
    CHECK(a.query_count() == 1);

    // the injected offset respects the declared bound
    CycInt exact = amplified_eval_omega(weight_distribution(c23()), 3, 6, 9);
    ApproxComplex truth = to_complex(exact, 256);
    Real d = ApproxComplex::dist_upper(qa, truth);
    CHECK(d.cmp(a.noise_bound(3 + 6 + 9)) <= 0);
    double lower = 0.99 * std::exp2(0.8 * 18) * 0.9;
    CHECK(d.to_double() > lower);  // adversarial mode sits at 0.99x the bound

    NoisyOracle quiet(c23(), 0.8, NoiseMode::adversarial_boundary, 1,
                      NoisyOracle::Points::omega_only, 0.0);
    CHECK(quiet.noise_bound(50).is_zero());
    ApproxComplex qq = quiet.query_amplified(6, 9, 256);
    CHECK(ApproxComplex::dist_upper(qq, truth).to_double() < 1e-60);

    CHECK_THROWS_AS(NoisyOracle(c23(), 1.0, NoiseMode::adversarial_boundary, 1), InputError);
    CHECK_THROWS_AS(a.query_point(mpq_class(1, 8), 3, 128), CapabilityError);
}

TEST_CASE("omega recovery on the running examples", "[amplify]") {
    LinearCode c = c23();
    CycInt truth = evaluate_at_omega(c);
    REQUIRE(truth == CycInt(1, 0, 3, 0));

    NoisyOracle adv(c, 0.8, NoiseMode::adversarial_boundary, 12345);
    OmegaRecovery rep = recover_value_at_omega(c, adv);
    CHECK(rep.k == 153);
    CHECK(rep.recovered == truth);
    CHECK(adv.query_count() == 4);
    for (double r : rep.residuals) CHECK(r <= 0.25);
    for (const auto& q : rep.queries) CHECK(q.length == (3 + q.a) * 153);

    NoisyOracle uni(c, 0.8, NoiseMode::uniform_random, 999);
    CHECK(recover_value_at_omega(c, uni).recovered == truth);

    NoisyOracle radv(rep3(), 0.8, NoiseMode::adversarial_boundary, 4711);
    OmegaRecovery rrep = recover_value_at_omega(rep3(), radv);
    CHECK(rrep.recovered == CycInt(1, 0, 0, 1));
    CHECK(rrep.recovered.str() == "1+1*w^3");
}

TEST_CASE("omega recovery validates its preconditions", "[amplify]") {
    LinearCode deficient = parse_code_text("2 2\n11\n11\n");
    NoisyOracle o(deficient, 0.8, NoiseMode::adversarial_boundary, 5);
    CHECK_THROWS_AS(recover_value_at_omega(deficient, o), InputError);

    // alpha above the threshold cannot be drowned
    NoisyOracle hot(c23(), 0.9, NoiseMode::adversarial_boundary, 5);
    CHECK_THROWS_AS(recover_value_at_omega(c23(), hot), InputError);

    // an underpowered k is refused rather than silently wrong
    NoisyOracle weak(c23(), 0.8, NoiseMode::adversarial_boundary, 5);
    RecoveryParams params;
    params.k = 9;
    CHECK_THROWS_AS(recover_value_at_omega(c23(), weak, params), CertificationError);
    RecoveryParams bad_k;
    bad_k.k = 12;  // not 1 mod 8
    CHECK_THROWS_AS(recover_value_at_omega(c23(), weak, bad_k), InputError);
}

TEST_CASE("coefficient recovery on the running example", "[amplify]") {
    LinearCode c = c23();
    std::vector<mpz_class> truth{1, 0, 3, 0};

    NoisyOracle adv(c, 0.9, NoiseMode::adversarial_boundary, 777, NoisyOracle::Points::any);
    CoefficientRecovery rep = recover_coefficients(c, adv);
    CHECK(rep.recovered.counts == truth);
    CHECK(rep.attempts >= 1);
    CHECK(rep.max_residual < 0.5);
    CHECK(rep.k > 0);
    CHECK(rep.phases.size() == 4);
    CHECK(rep.answers.size() == 4);
    CHECK(adv.query_count() == 4 * rep.attempts);

    NoisyOracle uni(c, 0.9, NoiseMode::uniform_random, 31, NoisyOracle::Points::any);
    CHECK(recover_coefficients(c, uni).recovered.counts == truth);

    // noiseless oracle degenerates to plain interpolation at k = 0
    NoisyOracle quiet(c, 0.9, NoiseMode::adversarial_boundary, 1,
                      NoisyOracle::Points::any, 0.0);
    RecoveryParams direct;
    direct.k = 0;
    CoefficientRecovery drep = recover_coefficients(c, quiet, direct);
    CHECK(drep.recovered.counts == truth);
    CHECK(drep.k == 0);
    CHECK(quiet.query_count() == 4);
}

TEST_CASE("coefficient recovery validates its preconditions", "[amplify]") {
    NoisyOracle omega_only(c23(), 0.9, NoiseMode::adversarial_boundary, 1);
    CHECK_THROWS_AS(recover_coefficients(c23(), omega_only), CapabilityError);

    NoisyOracle o(c23(), 0.9, NoiseMode::adversarial_boundary, 1, NoisyOracle::Points::any);
    RecoveryParams bad_r;
    bad_r.r = 0.5;  // 2 - 2^0.9 is about 0.134: too wide
    CHECK_THROWS_AS(recover_coefficients(c23(), o, bad_r), InputError);

    // fixed k and precision with real noise: certification must refuse
    NoisyOracle noisy(c23(), 0.9, NoiseMode::adversarial_boundary, 9,
                      NoisyOracle::Points::any);
    RecoveryParams fixed;
    fixed.k = 0;
    fixed.precision_bits = 128;
    CHECK_THROWS_AS(recover_coefficients(c23(), noisy, fixed), CertificationError);
}

TEST_CASE("recovery round trips on random full-rank codes", "[amplify]") {
    for (int trial = 0; trial < 4; ++trial) {
        std::size_t n = 4 + std::size_t(trial) * 2, d = 2 + std::size_t(trial);
        LinearCode c = random_full_rank(n, d, 1000 + std::uint64_t(trial));
        NoisyOracle adv(c, 0.8, NoiseMode::adversarial_boundary, 31 + std::uint64_t(trial));
        CHECK(recover_value_at_omega(c, adv).recovered == evaluate_at_omega(c));
        NoisyOracle pts(c, 0.9, NoiseMode::adversarial_boundary, 77 + std::uint64_t(trial),
                        NoisyOracle::Points::any);
        CHECK(recover_coefficients(c, pts).recovered.counts ==
              weight_distribution(c).counts);
    }
}
