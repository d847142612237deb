#pragma once

// Recovery of exact enumerator data from a noisy evaluation oracle. The
// oracle may err by nearly 2^(alpha * E) where E is the length-derived noise
// exponent of the query; both procedures here drown that noise by evaluating
// amplified codes and certify their rounding with tracked error bounds.
//
//  * recover_value_at_omega uses the wreath family C(a, k): dividing the
//    answers by (1 + omega)^k leaves mod-4 weight-class sums M_s with all
//    contamination decaying like tan(pi/8)^k, and a 4x4 cyclic system with
//    determinant 2 separates them.
//  * recover_coefficients queries C + I_k at n+1 unit-circle points close to
//    1, divides by (1 + q)^k and interpolates the full distribution.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wecomp/codes.hpp"
#include "wecomp/cyclotomic.hpp"
#include "wecomp/errors.hpp"
#include "wecomp/real.hpp"

namespace wecomp {

/// Hardness threshold log2|1 + omega| = log2(2 cos(pi/8)).
inline double alpha0() { return std::log2(2.0 * std::cos(M_PI / 8.0)); }

enum class NoiseMode { adversarial_boundary, uniform_random };

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
    for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ull;
    return h;
}

}  // namespace detail

/// Simulated bounded-noise oracle over a fixed base code. It computes exact
/// answers from the base weight distribution and perturbs them by a
/// deterministic, seed-dependent noise term of magnitude at most
/// noise_scale * 2^(alpha * E), E being n+a+k for wreath queries and n+k for
/// point queries. The returned error bound covers only the oracle's own
/// arithmetic; callers account for the noise contract separately.
class NoisyOracle {
public:
    enum class Points { omega_only, any };

    NoisyOracle(LinearCode base, double alpha, NoiseMode mode, std::uint64_t seed,
                Points points = Points::omega_only, double noise_scale = 0.99)
        : base_(std::move(base)),
          dist_(weight_distribution(base_, Semantics::codeword)),
          alpha_(alpha),
          mode_(mode),
          seed_(seed),
          points_(points),
          scale_(noise_scale) {
        if (!(alpha > 0.0) || !(alpha < 1.0))
            throw InputError("noise rate alpha must lie in (0, 1)");
    }

    const LinearCode& base() const { return base_; }
    double alpha() const { return alpha_; }
    bool answers_arbitrary_points() const { return points_ == Points::any; }
    long query_count() const { return queries_; }

    /// Declared bound on the injected noise for a query of the given length
    /// exponent: noise_scale * 2^(alpha * exponent), rounded up with margin.
    Real noise_bound(long exponent) const {
        Real b(detail::kErrPrec);
        if (scale_ == 0.0) return b;
        mpfr_set_d(b.raw(), alpha_, MPFR_RNDU);
        mpfr_mul_si(b.raw(), b.raw(), exponent, MPFR_RNDU);
        mpfr_exp2(b.raw(), b.raw(), MPFR_RNDU);
        Real s(detail::kErrPrec);
        mpfr_set_d(s.raw(), scale_, MPFR_RNDU);
        mpfr_nextabove(s.raw());
        b = detail::emul(b, s);
        // Absorb the rounding of the noise synthesis itself.
        Real margin(detail::kErrPrec);
        mpfr_set_ui_2exp(margin.raw(), 1, -30, MPFR_RNDU);
        mpfr_add_ui(margin.raw(), margin.raw(), 1, MPFR_RNDU);
        return detail::emul(b, margin);
    }

    /// Value close to w_{C(a,k)}(omega).
    ApproxComplex query_amplified(std::size_t a, std::size_t k, mpfr_prec_t prec) {
        ++queries_;
        CycInt exact = amplified_eval_omega(dist_, base_.length(), a, k);
        ApproxComplex z = to_complex(exact, prec);
        std::uint64_t h = detail::splitmix64(seed_ ^ 0x77726561746800ull);
        h = detail::splitmix64(h ^ a);
        h = detail::splitmix64(h ^ (k << 8));
        return apply_noise(z, long(base_.length() + a + k), h, prec);
    }

    /// Value close to w_{C + I_k}(q) at q = exp(i pi phi).
    ApproxComplex query_point(const mpq_class& phi, std::size_t k, mpfr_prec_t prec) {
        if (points_ != Points::any)
            throw CapabilityError("this oracle answers only at omega");
        ++queries_;
        ApproxComplex q = ApproxComplex::unit_from_phase(phi, prec);
        ApproxComplex w = evaluate(dist_, q);
        ApproxComplex amp = ApproxComplex::pow_int(
            ApproxComplex::add(ApproxComplex::exact_int(1, prec), q), k);
        ApproxComplex z = ApproxComplex::mul(w, amp);
        std::uint64_t h = detail::splitmix64(seed_ ^ 0x706f696e7400ull);
        h = detail::fnv1a(h, phi.get_num().get_str());
        h = detail::splitmix64(detail::fnv1a(h, phi.get_den().get_str()));
        h = detail::splitmix64(h ^ (k << 8));
        return apply_noise(z, long(base_.length() + k), h, prec);
    }

private:
    ApproxComplex apply_noise(const ApproxComplex& z, long exponent, std::uint64_t h,
                              mpfr_prec_t prec) const {
        if (scale_ == 0.0) return z;
        Real mag = Real::exp2(Real::mul(Real::of_double(alpha_, prec),
                                        Real::of_long(exponent, prec)));
        mag = Real::mul(mag, Real::of_double(scale_, prec));
        std::uint64_t h2 = detail::splitmix64(h ^ 0x6d61676e69ull);
        if (mode_ == NoiseMode::uniform_random) {
            Real u = Real::mul_2si(Real::of_double(double(h2 >> 11), prec), -53);
            mag = Real::mul(mag, Real::sqrt(u));
        }
        Real psi = Real::mul_2si(Real::of_double(double(h >> 11), prec), -53);
        psi = Real::mul(psi, Real::mul_2si(Real::pi(prec), 1));
        Real nr = Real::mul(mag, Real::cos(psi));
        Real ni = Real::mul(mag, Real::sin(psi));
        ApproxComplex noisy(Real::add(z.re(), nr), Real::add(z.im(), ni), z.err());
        noisy.add_err(detail::eadd(detail::eadd(nr.ulp(), ni.ulp()),
                                   detail::eadd(noisy.re().ulp(), noisy.im().ulp())));
        noisy.add_err(mag.ulp());
        return noisy;
    }

    LinearCode base_;
    WeightDistribution dist_;
    double alpha_;
    NoiseMode mode_;
    std::uint64_t seed_;
    Points points_;
    double scale_;
    long queries_ = 0;
};

struct RecoveryParams {
    std::optional<long> k;        ///< amplification power; eligible values are 1 mod 8
    std::optional<double> r;      ///< point-cluster radius for recover_coefficients
    double target_residual = 0.05;
    mpfr_prec_t precision_bits = 0;  ///< 0 = derive from k and n
};

/// Smallest k = 1 (mod 8) whose residual bound
///   2^(alpha (n + a_max)) (2^alpha / |1+omega|)^k + 2^(d+1) tan(pi/8)^k
/// drops below the target.
inline long choose_k(std::size_t n, std::size_t d, double alpha, std::size_t a_max,
                     double target = 0.05) {
    if (!(alpha > 0.0) || !(alpha < alpha0()))
        throw InputError("alpha must lie in (0, alpha0) for omega recovery");
    double lam = std::exp2(alpha) / (2.0 * std::cos(M_PI / 8.0));
    double tanv = std::tan(M_PI / 8.0);
    double lead = std::exp2(alpha * double(n + a_max));
    double sub = std::exp2(double(d) + 1.0);
    for (long k = 1; k <= 1000000; k += 8) {
        double bound = lead * std::pow(lam, double(k)) + sub * std::pow(tanv, double(k));
        if (bound < target) return k;
    }
    throw ResourceError("no feasible amplification power below budget");
}

struct OmegaQueryRecord {
    std::size_t a = 0;
    std::size_t length = 0;
    double re = 0, im = 0;
};

struct OmegaRecovery {
    double alpha = 0;
    long k = 0;
    std::array<OmegaQueryRecord, 4> queries;
    std::array<double, 4> residuals{};
    CycInt recovered;
};

/// Exact w_C(omega) of a full-rank code from four amplified queries.
inline OmegaRecovery recover_value_at_omega(const LinearCode& c, NoisyOracle& oracle,
                                            const RecoveryParams& params = {}) {
    std::size_t n = c.length();
    std::size_t d = c.dimension();
    if (rank(c.generator()) != d)
        throw InputError("omega recovery requires a full-rank generator");
    double alpha = oracle.alpha();
    if (!(alpha < alpha0()))
        throw InputError("alpha at or above the hardness threshold alpha0");

    std::array<std::size_t, 4> a{};
    std::size_t a_max = 0;
    for (long s = 0; s < 4; ++s) {
        long v = (1 + 2 * s - long(n)) % 8;
        if (v <= 0) v += 8;
        a[std::size_t(s)] = std::size_t(v);
        a_max = std::max(a_max, a[std::size_t(s)]);
    }
    long k = params.k ? *params.k
                      : choose_k(n, d, alpha, a_max, params.target_residual);
    if (k < 1 || k % 8 != 1) throw InputError("k must be positive and 1 mod 8");
    mpfr_prec_t prec = params.precision_bits
                           ? params.precision_bits
                           : mpfr_prec_t(k + long(n) + long(d) + 128);

    OmegaRecovery rep;
    rep.alpha = alpha;
    rep.k = k;

    // Residual decay of the two non-adjacent weight classes.
    Real tanv(detail::kErrPrec);
    mpfr_const_pi(tanv.raw(), MPFR_RNDU);
    mpfr_div_ui(tanv.raw(), tanv.raw(), 8, MPFR_RNDU);
    mpfr_tan(tanv.raw(), tanv.raw(), MPFR_RNDU);
    Real tail(detail::kErrPrec);
    mpfr_pow_ui(tail.raw(), tanv.raw(), static_cast<unsigned long>(k), MPFR_RNDU);
    tail = Real::mul_2si(tail, long(d) + 1);

    ApproxComplex denom =
        to_complex((CycInt::integer(1) + CycInt::omega_pow(1)).pow(std::size_t(k)), prec);
    std::array<ApproxComplex, 4> mu;
    for (std::size_t s = 0; s < 4; ++s) {
        ApproxComplex ans = oracle.query_amplified(a[s], std::size_t(k), prec);
        rep.queries[s] = {a[s], (n + a[s]) * std::size_t(k), ans.re().to_double(),
                          ans.im().to_double()};
        ans.add_err(oracle.noise_bound(long(n + a[s]) + k));
        mu[s] = ApproxComplex::div(ans, denom);
        mu[s].add_err(tail);
    }

    std::array<ApproxComplex, 4> omega_inv;
    for (long j = 0; j < 4; ++j) omega_inv[std::size_t(j)] = to_complex(CycInt::omega_pow(-j), prec);

    CycInt recovered_parts[4];
    std::array<mpz_class, 4> m_hat;
    for (std::size_t s = 0; s < 4; ++s) {
        // x_s = (mu_s - w^-1 mu_{s+1} + w^-2 mu_{s+2} - w^-3 mu_{s+3}) / 2
        ApproxComplex x = mu[s];
        for (int t = 1; t < 4; ++t) {
            ApproxComplex term = ApproxComplex::mul(omega_inv[std::size_t(t)], mu[(s + std::size_t(t)) % 4]);
            x = (t % 2) ? ApproxComplex::sub(x, term) : ApproxComplex::add(x, term);
        }
        x = ApproxComplex::mul_2si(x, -1);
        ApproxComplex y = ApproxComplex::mul(x, to_complex(CycInt::omega_pow(-long(s)), prec));
        if (y.err().cmp_d(0.5) >= 0)
            throw CertificationError("uncertified omega recovery: error bound reached 1/2");
        m_hat[s] = y.re().round_to_mpz();
        Real resid = ApproxComplex::dist_upper(y, ApproxComplex::of_mpz(m_hat[s], prec));
        rep.residuals[s] = resid.to_double();
        if (resid.cmp_d(0.25) > 0)
            throw CertificationError("omega recovery residual exceeded 1/4");
    }
    rep.recovered = CycInt(m_hat[0], m_hat[1], m_hat[2], m_hat[3]);
    return rep;
}

struct CoefficientRecovery {
    double alpha = 0;
    long k = 0;
    double r = 0;
    std::vector<double> phases;
    std::vector<std::array<double, 2>> answers;  ///< raw oracle answers, final attempt
    double max_residual = 0;
    int attempts = 0;
    WeightDistribution recovered;
};

/// Full weight distribution of a code from n+1 noisy evaluations of
/// C + I_k near q = 1. Interpolation runs in tracked arithmetic; k and the
/// working precision are raised until every coefficient is certified to
/// within 1/2.
inline CoefficientRecovery recover_coefficients(const LinearCode& c, NoisyOracle& oracle,
                                                const RecoveryParams& params = {}) {
    if (!oracle.answers_arbitrary_points())
        throw CapabilityError("coefficient recovery needs an oracle for arbitrary points");
    std::size_t n = c.length();
    double alpha = oracle.alpha();
    double r = params.r ? *params.r : 0.9 * (2.0 - std::exp2(alpha));
    if (!(r > 0.0) || r >= 2.0 - std::exp2(alpha))
        throw InputError("radius must satisfy 0 < r < 2 - 2^alpha");
    double beta = std::exp2(alpha) / (2.0 - r);

    // Dyadic approximation of theta_max / pi with theta_max = 2 asin(0.999 r / 2):
    // all points stay strictly within r of 1.
    double phi_max = 2.0 * std::asin(0.999 * r / 2.0) / M_PI;
    mpq_class phi_top(mpz_class(std::floor(std::ldexp(phi_max, 40))), mpz_class(1) << 40);
    phi_top.canonicalize();

    std::vector<mpq_class> phis;
    for (std::size_t j = 0; j <= n; ++j) {
        if (n == 0) {
            phis.emplace_back(0);
            break;
        }
        mpq_class f(2 * long(j) - long(n), long(n));
        f.canonicalize();
        phis.push_back(phi_top * f);
    }

    // Estimate the Lagrange amplification factor in doubles to pick k.
    long k;
    if (params.k) {
        k = *params.k;
        if (k < 0) throw InputError("k must be nonnegative");
    } else {
        double pi = M_PI;
        std::vector<std::complex<double>> pts;
        for (const auto& p : phis) {
            double a = pi * p.get_d();
            pts.emplace_back(std::cos(a), std::sin(a));
        }
        double amplification = 1.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            std::vector<std::complex<double>> poly{1.0};
            std::complex<double> den = 1.0;
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (j == i) continue;
                poly.push_back(0.0);
                for (std::size_t t = poly.size() - 1; t > 0; --t)
                    poly[t] = poly[t - 1] - pts[j] * poly[t];
                poly[0] = -pts[j] * poly[0];
                den *= pts[i] - pts[j];
            }
            double colsum = 0;
            for (const auto& cf : poly) colsum = std::max(colsum, std::abs(cf / den));
            amplification = std::max(amplification, colsum * double(pts.size()));
        }
        double need = std::log(amplification * std::exp2(alpha * double(n)) / 0.4) /
                      -std::log(beta);
        k = std::max(1L, long(std::ceil(need)) + 1);
    }

    CoefficientRecovery rep;
    rep.alpha = alpha;
    rep.r = r;
    for (const auto& p : phis) rep.phases.push_back(p.get_d());

    for (int attempt = 0; attempt < 8; ++attempt) {
        rep.attempts = attempt + 1;
        rep.k = k;
        mpfr_prec_t prec = params.precision_bits
                               ? params.precision_bits
                               : mpfr_prec_t(k + long(n) + 192);
        for (int extra = 0; extra < attempt; ++extra) prec *= 2;

        std::vector<ApproxComplex> pts, values;
        bool feasible = true;
        rep.answers.clear();
        try {
            for (std::size_t j = 0; j < phis.size(); ++j) {
                ApproxComplex q = ApproxComplex::unit_from_phase(phis[j], prec);
                ApproxComplex ans = oracle.query_point(phis[j], std::size_t(k), prec);
                rep.answers.push_back({ans.re().to_double(), ans.im().to_double()});
                ans.add_err(oracle.noise_bound(long(n) + k));
                ApproxComplex denom = ApproxComplex::pow_int(
                    ApproxComplex::add(ApproxComplex::exact_int(1, prec), q), std::size_t(k));
                values.push_back(ApproxComplex::div(ans, denom));
                pts.push_back(std::move(q));
            }

            std::vector<ApproxComplex> coeffs(n + 1, ApproxComplex(prec));
            for (std::size_t i = 0; i < pts.size(); ++i) {
                std::vector<ApproxComplex> poly{ApproxComplex::exact_int(1, prec)};
                ApproxComplex den = ApproxComplex::exact_int(1, prec);
                for (std::size_t j = 0; j < pts.size(); ++j) {
                    if (j == i) continue;
                    poly.push_back(ApproxComplex(prec));
                    for (std::size_t t = poly.size() - 1; t > 0; --t)
                        poly[t] = ApproxComplex::sub(poly[t - 1],
                                                     ApproxComplex::mul(pts[j], poly[t]));
                    poly[0] = ApproxComplex::neg(ApproxComplex::mul(pts[j], poly[0]));
                    den = ApproxComplex::mul(den, ApproxComplex::sub(pts[i], pts[j]));
                }
                ApproxComplex scale = ApproxComplex::div(values[i], den);
                for (std::size_t t = 0; t < poly.size(); ++t)
                    coeffs[t] = ApproxComplex::add(coeffs[t],
                                                   ApproxComplex::mul(scale, poly[t]));
            }

            WeightDistribution out;
            out.counts.assign(n + 1, 0);
            double worst = 0;
            for (std::size_t t = 0; t <= n; ++t) {
                if (coeffs[t].err().cmp_d(0.5) >= 0) {
                    feasible = false;
                    break;
                }
                mpz_class rounded = coeffs[t].re().round_to_mpz();
                Real resid = ApproxComplex::dist_upper(coeffs[t],
                                                       ApproxComplex::of_mpz(rounded, prec));
                worst = std::max(worst, resid.to_double());
                out.counts[t] = rounded;
            }
            if (feasible) {
                rep.max_residual = worst;
                rep.recovered = std::move(out);
                return rep;
            }
        } catch (const CertificationError&) {
            feasible = false;
        }
        if (params.k && params.precision_bits)
            throw CertificationError("coefficient recovery uncertified at fixed k and precision");
        k = params.k ? k : (k + k / 2 + 8);
    }
    throw CertificationError("coefficient recovery failed to certify within retry budget");
}

}  // namespace wecomp
