#pragma once

// Arbitrary-precision floating point (MPFR) plus a complex type that carries
// a certified bound on the distance between the stored value and the value it
// approximates. Value arithmetic rounds to nearest; every error-bound
// computation rounds upward, so bounds stay valid.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

#include "wecomp/errors.hpp"

namespace wecomp {

class Real {
public:
    explicit Real(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    static Real of_long(long v, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_si(r.v_, v, MPFR_RNDN);
        return r;
    }
    static Real of_double(double v, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_d(r.v_, v, MPFR_RNDN);
        return r;
    }
    static Real of_mpz(const mpz_class& v, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(prec);
        mpfr_set_z(r.v_, v.get_mpz_t(), rnd);
        return r;
    }
    static Real of_mpq(const mpq_class& v, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(prec);
        mpfr_set_q(r.v_, v.get_mpq_t(), rnd);
        return r;
    }
    /// Exact 2^e.
    static Real pow2(long e, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }
    static Real pi(mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(prec);
        mpfr_const_pi(r.v_, rnd);
        return r;
    }

    static Real add(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_add(r.v_, a.v_, b.v_, rnd);
        return r;
    }
    static Real sub(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.v_, a.v_, b.v_, rnd);
        return r;
    }
    static Real mul(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_mul(r.v_, a.v_, b.v_, rnd);
        return r;
    }
    static Real div(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_div(r.v_, a.v_, b.v_, rnd);
        return r;
    }
    static Real sqrt(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(a.prec());
        mpfr_sqrt(r.v_, a.v_, rnd);
        return r;
    }
    static Real neg(const Real& a) {
        Real r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    static Real abs(const Real& a) {
        Real r(a.prec());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    /// Exact scaling by 2^e.
    static Real mul_2si(const Real& a, long e) {
        Real r(a.prec());
        mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }
    static Real cos(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(a.prec());
        mpfr_cos(r.v_, a.v_, rnd);
        return r;
    }
    static Real sin(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(a.prec());
        mpfr_sin(r.v_, a.v_, rnd);
        return r;
    }
    static Real exp2(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(a.prec());
        mpfr_exp2(r.v_, a.v_, rnd);
        return r;
    }
    static Real max(const Real& a, const Real& b) { return a.cmp(b) >= 0 ? a : b; }

    int sgn() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
    int cmp_d(double d) const { return mpfr_cmp_d(v_, d); }

    /// 2^(exponent - prec + 1), an upper bound on the rounding error of one
    /// nearest operation producing this value. Zero for a zero value.
    Real ulp() const {
        Real r(64);
        if (mpfr_zero_p(v_)) return r;
        mpfr_set_ui_2exp(r.v_, 1, mpfr_get_exp(v_) - prec() + 1, MPFR_RNDU);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    mpz_class round_to_mpz() const {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
        return z;
    }

private:
    mpfr_t v_;
};

namespace detail {

// Error-bound arithmetic: fixed moderate precision, always rounded up.
constexpr mpfr_prec_t kErrPrec = 64;

inline Real eadd(const Real& a, const Real& b) {
    Real r(kErrPrec);
    mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
    return r;
}
inline Real emul(const Real& a, const Real& b) {
    Real r(kErrPrec);
    mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
    return r;
}
inline Real ediv(const Real& a, const Real& b) {
    Real r(kErrPrec);
    mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
    return r;
}
inline Real emul_down(const Real& a, const Real& b) {
    Real r(kErrPrec);
    mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDD);
    return r;
}

}  // namespace detail

/// Complex number with a certified absolute error bound: the true value lies
/// within distance err() of re() + i*im().
class ApproxComplex {
public:
    explicit ApproxComplex(mpfr_prec_t prec = 64)
        : re_(prec), im_(prec), err_(detail::kErrPrec) {}

    ApproxComplex(Real re, Real im, Real err)
        : re_(std::move(re)), im_(std::move(im)), err_(std::move(err)) {}

    static ApproxComplex exact_int(long re, mpfr_prec_t prec) {
        ApproxComplex z(prec);
        mpfr_set_si(z.re_.raw(), re, MPFR_RNDN);
        return z;
    }

    static ApproxComplex of_mpz(const mpz_class& re, mpfr_prec_t prec) {
        ApproxComplex z(prec);
        if (mpfr_set_z(z.re_.raw(), re.get_mpz_t(), MPFR_RNDN) != 0) z.err_ = z.re_.ulp();
        return z;
    }

    /// exp(i*pi*phi) for rational phi with |phi| <= 1.
    static ApproxComplex unit_from_phase(const mpq_class& phi, mpfr_prec_t prec) {
        if (::abs(phi) > 1) throw InputError("phase must satisfy |phi| <= 1");
        Real theta = Real::mul(Real::pi(prec), Real::of_mpq(phi, prec));
        ApproxComplex z(prec);
        mpfr_cos(z.re_.raw(), theta.raw(), MPFR_RNDN);
        mpfr_sin(z.im_.raw(), theta.raw(), MPFR_RNDN);
        // theta carries at most 3 ulps of error at exponent <= 2, and cos/sin
        // are 1-Lipschitz and correctly rounded.
        z.err_ = Real::pow2(5 - prec, detail::kErrPrec);
        return z;
    }

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    const Real& err() const { return err_; }
    mpfr_prec_t prec() const { return re_.prec(); }

    void add_err(const Real& extra) { err_ = detail::eadd(err_, extra); }

    /// Upper bound on |represented value|.
    Real abs_upper() const {
        Real rr(detail::kErrPrec), ii(detail::kErrPrec), s(detail::kErrPrec);
        mpfr_sqr(rr.raw(), re_.raw(), MPFR_RNDU);
        mpfr_sqr(ii.raw(), im_.raw(), MPFR_RNDU);
        mpfr_add(s.raw(), rr.raw(), ii.raw(), MPFR_RNDU);
        mpfr_sqrt(s.raw(), s.raw(), MPFR_RNDU);
        return s;
    }

    /// Lower bound on |represented value|.
    Real abs_lower() const {
        Real rr(detail::kErrPrec), ii(detail::kErrPrec), s(detail::kErrPrec);
        mpfr_sqr(rr.raw(), re_.raw(), MPFR_RNDD);
        mpfr_sqr(ii.raw(), im_.raw(), MPFR_RNDD);
        mpfr_add(s.raw(), rr.raw(), ii.raw(), MPFR_RNDD);
        mpfr_sqrt(s.raw(), s.raw(), MPFR_RNDD);
        return s;
    }

    static ApproxComplex add(const ApproxComplex& a, const ApproxComplex& b) {
        ApproxComplex z(Real::add(a.re_, b.re_), Real::add(a.im_, b.im_), Real(detail::kErrPrec));
        z.err_ = detail::eadd(detail::eadd(a.err_, b.err_),
                              detail::eadd(z.re_.ulp(), z.im_.ulp()));
        return z;
    }

    static ApproxComplex sub(const ApproxComplex& a, const ApproxComplex& b) {
        ApproxComplex z(Real::sub(a.re_, b.re_), Real::sub(a.im_, b.im_), Real(detail::kErrPrec));
        z.err_ = detail::eadd(detail::eadd(a.err_, b.err_),
                              detail::eadd(z.re_.ulp(), z.im_.ulp()));
        return z;
    }

    static ApproxComplex neg(const ApproxComplex& a) {
        return {Real::neg(a.re_), Real::neg(a.im_), a.err_};
    }

    static ApproxComplex conj(const ApproxComplex& a) {
        return {a.re_, Real::neg(a.im_), a.err_};
    }

    static ApproxComplex mul(const ApproxComplex& a, const ApproxComplex& b) {
        Real p1 = Real::mul(a.re_, b.re_);
        Real p2 = Real::mul(a.im_, b.im_);
        Real p3 = Real::mul(a.re_, b.im_);
        Real p4 = Real::mul(a.im_, b.re_);
        ApproxComplex z(Real::sub(p1, p2), Real::add(p3, p4), Real(detail::kErrPrec));
        Real ma = a.abs_upper(), mb = b.abs_upper();
        Real cross = detail::eadd(detail::emul(detail::eadd(ma, a.err_), b.err_),
                                  detail::emul(mb, a.err_));
        Real rounding = detail::eadd(
            detail::eadd(detail::eadd(p1.ulp(), p2.ulp()), detail::eadd(p3.ulp(), p4.ulp())),
            detail::eadd(z.re_.ulp(), z.im_.ulp()));
        z.err_ = detail::eadd(cross, rounding);
        return z;
    }

    /// Division certifies that the divisor is separated from zero by its own
    /// error bound; otherwise no finite quotient bound exists.
    static ApproxComplex div(const ApproxComplex& a, const ApproxComplex& b) {
        Real b_low = b.abs_lower();
        Real low(detail::kErrPrec);
        mpfr_sub(low.raw(), b_low.raw(), b.err_.raw(), MPFR_RNDD);
        if (low.sgn() <= 0)
            throw CertificationError("division by a value not separated from zero");
        Real s1 = Real::mul(b.re_, b.re_);
        Real s2 = Real::mul(b.im_, b.im_);
        Real den = Real::add(s1, s2);
        Real n1 = Real::mul(a.re_, b.re_);
        Real n2 = Real::mul(a.im_, b.im_);
        Real n3 = Real::mul(a.im_, b.re_);
        Real n4 = Real::mul(a.re_, b.im_);
        Real nr = Real::add(n1, n2);
        Real ni = Real::sub(n3, n4);
        ApproxComplex z(Real::div(nr, den), Real::div(ni, den), Real(detail::kErrPrec));
        Real a_up = a.abs_upper();
        Real b_up = b.abs_upper();
        Real den_low(detail::kErrPrec);  // lower bound on |bhat|^2
        mpfr_sqr(den_low.raw(), b_low.raw(), MPFR_RNDD);
        if (den_low.sgn() <= 0) throw CertificationError("division by zero");
        // Arithmetic error against the exact quotient of the represented
        // operands: component roundings, numerator roundings over den, and
        // the denominator rounding scaled by |ahat||bhat| / den^2.
        Real num_err = detail::eadd(
            detail::eadd(detail::eadd(n1.ulp(), n2.ulp()), detail::eadd(n3.ulp(), n4.ulp())),
            detail::eadd(nr.ulp(), ni.ulp()));
        Real den_err = detail::eadd(detail::eadd(s1.ulp(), s2.ulp()), den.ulp());
        Real arith = detail::eadd(z.re_.ulp(), z.im_.ulp());
        arith = detail::eadd(arith, detail::ediv(num_err, den_low));
        Real den_low_sq(detail::kErrPrec);
        mpfr_sqr(den_low_sq.raw(), den_low.raw(), MPFR_RNDD);
        if (den_low_sq.sgn() > 0) {
            Real ab = detail::emul(a_up, b_up);
            arith = detail::eadd(arith,
                                 detail::emul(Real::of_long(2, detail::kErrPrec),
                                              detail::ediv(detail::emul(ab, den_err), den_low_sq)));
        }
        // Propagated operand errors:
        //   |a/b - ahat/bhat| <= ea/|b| + |ahat| eb / (|b||bhat|).
        Real prop = detail::ediv(a.err_, low);
        prop = detail::eadd(prop, detail::ediv(detail::emul(a_up, b.err_),
                                               detail::emul_down(low, b_low)));
        z.err_ = detail::eadd(prop, arith);
        return z;
    }

    static ApproxComplex pow_int(const ApproxComplex& a, unsigned long k) {
        ApproxComplex acc = exact_int(1, a.prec());
        ApproxComplex base = a;
        while (k) {
            if (k & 1) acc = mul(acc, base);
            k >>= 1;
            if (k) base = mul(base, base);
        }
        return acc;
    }

    /// Exact scaling by 2^e.
    static ApproxComplex mul_2si(const ApproxComplex& a, long e) {
        ApproxComplex z(Real::mul_2si(a.re_, e), Real::mul_2si(a.im_, e), Real(detail::kErrPrec));
        mpfr_mul_2si(z.err_.raw(), a.err_.raw(), e, MPFR_RNDU);
        return z;
    }

    /// Upper bound on the distance between the represented values of a and b.
    /// The true distance differs from this by at most a.err + b.err.
    static Real dist_upper(const ApproxComplex& a, const ApproxComplex& b) {
        ApproxComplex d = sub(a, b);
        return detail::eadd(d.abs_upper(), d.err_);
    }

private:
    Real re_, im_, err_;
};

}  // namespace wecomp
