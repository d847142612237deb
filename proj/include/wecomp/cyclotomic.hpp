#pragma once

// Exact arithmetic in Z[w] for w = exp(i*pi/4), the eighth root of unity.
// Elements are stored on the basis {1, w, w^2, w^3} with the reduction
// w^4 = -1. Note w^2 = i and w - w^3 = sqrt(2).

#include <gmpxx.h>

#include <array>
#include <cctype>
#include <string>
#include <string_view>

#include "wecomp/errors.hpp"
#include "wecomp/real.hpp"

namespace wecomp {

class CycInt {
public:
    CycInt() = default;
    CycInt(mpz_class c0, mpz_class c1, mpz_class c2, mpz_class c3)
        : c_{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {}

    static CycInt integer(const mpz_class& v) { return {v, 0, 0, 0}; }
    static CycInt integer(long v) { return {mpz_class(v), 0, 0, 0}; }

    /// w^k for any integer k (negative exponents via w^-1 = -w^3).
    static CycInt omega_pow(long k) {
        long e = k % 8;
        if (e < 0) e += 8;
        CycInt r;
        if (e < 4)
            r.c_[e] = 1;
        else
            r.c_[e - 4] = -1;
        return r;
    }

    const mpz_class& coeff(int i) const { return c_[i]; }

    bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
    bool is_integer() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

    const mpz_class& as_integer() const {
        if (!is_integer()) throw InternalError("CycInt is not a rational integer");
        return c_[0];
    }

    friend CycInt operator+(const CycInt& a, const CycInt& b) {
        return {a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2], a.c_[3] + b.c_[3]};
    }
    friend CycInt operator-(const CycInt& a, const CycInt& b) {
        return {a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2], a.c_[3] - b.c_[3]};
    }
    friend CycInt operator-(const CycInt& a) {
        return {-a.c_[0], -a.c_[1], -a.c_[2], -a.c_[3]};
    }
    friend CycInt operator*(const CycInt& a, const CycInt& b) {
        CycInt r;
        for (int i = 0; i < 4; ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; j < 4; ++j) {
                if (b.c_[j] == 0) continue;
                mpz_class t = a.c_[i] * b.c_[j];
                int e = i + j;
                if (e >= 4)
                    r.c_[e - 4] -= t;
                else
                    r.c_[e] += t;
            }
        }
        return r;
    }
    CycInt& operator+=(const CycInt& o) { return *this = *this + o; }
    CycInt& operator*=(const CycInt& o) { return *this = *this * o; }

    CycInt pow(unsigned long k) const {
        CycInt acc = integer(1);
        CycInt base = *this;
        while (k) {
            if (k & 1) acc *= base;
            k >>= 1;
            if (k) base *= base;
        }
        return acc;
    }

    bool operator==(const CycInt&) const = default;

    /// Textual form "a+b*w+c*w^2+d*w^3" with zero terms omitted; "0" for zero.
    std::string str() const {
        static const char* suffix[4] = {"", "*w", "*w^2", "*w^3"};
        std::string out;
        for (int i = 0; i < 4; ++i) {
            if (c_[i] == 0) continue;
            if (out.empty()) {
                out = c_[i].get_str();
            } else {
                out += (c_[i] < 0) ? "-" : "+";
                out += mpz_class(abs(c_[i])).get_str();
            }
            out += suffix[i];
        }
        return out.empty() ? "0" : out;
    }

    static CycInt parse(std::string_view text) {
        std::string s;
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s += c;
        if (s.empty()) throw InputError("empty cyclotomic literal");
        CycInt r;
        std::size_t pos = 0;
        while (pos < s.size()) {
            int sign = 1;
            if (s[pos] == '+' || s[pos] == '-') {
                sign = (s[pos] == '-') ? -1 : 1;
                ++pos;
            }
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            mpz_class coeff = 1;
            bool have_digits = pos > start;
            if (have_digits) coeff = mpz_class(s.substr(start, pos - start));
            int expo = 0;
            if (pos < s.size() && (s[pos] == '*' || s[pos] == 'w')) {
                if (s[pos] == '*') ++pos;
                if (pos >= s.size() || s[pos] != 'w')
                    throw InputError("malformed cyclotomic literal: " + std::string(text));
                ++pos;
                expo = 1;
                if (pos < s.size() && s[pos] == '^') {
                    ++pos;
                    std::size_t es = pos;
                    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                    if (pos == es) throw InputError("missing exponent in cyclotomic literal");
                    expo = std::stoi(s.substr(es, pos - es));
                    if (expo < 0 || expo > 3)
                        throw InputError("cyclotomic exponent must be in 0..3");
                }
            } else if (!have_digits) {
                throw InputError("malformed cyclotomic literal: " + std::string(text));
            }
            r.c_[expo] += sign * coeff;
        }
        return r;
    }

private:
    std::array<mpz_class, 4> c_{};
};

/// log2 |1 + omega| = log2(2 cos(pi/8)), the hardness threshold alpha_0.
inline Real log2_abs_one_plus_omega(mpfr_prec_t prec) {
    Real r = Real::pi(prec);
    mpfr_div_ui(r.raw(), r.raw(), 8, MPFR_RNDN);
    mpfr_cos(r.raw(), r.raw(), MPFR_RNDN);
    mpfr_mul_2ui(r.raw(), r.raw(), 1, MPFR_RNDN);
    mpfr_log2(r.raw(), r.raw(), MPFR_RNDN);
    return r;
}

/// Numeric embedding: re = c0 + (c1-c3)/sqrt(2), im = c2 + (c1+c3)/sqrt(2).
/// The error bound is exactly zero when no rounding occurred (in particular
/// whenever c1 = c3 = 0 and the integer parts fit in prec bits).
inline ApproxComplex to_complex(const CycInt& z, mpfr_prec_t prec) {
    if (prec < 16) throw InputError("to_complex needs at least 16 bits of precision");
    mpz_class t_re = z.coeff(1) - z.coeff(3);
    mpz_class t_im = z.coeff(1) + z.coeff(3);
    Real re(prec), im(prec), err(detail::kErrPrec);
    bool inexact = false;
    Real h(prec);
    mpfr_sqrt_ui(h.raw(), 2, MPFR_RNDN);
    mpfr_div_ui(h.raw(), h.raw(), 2, MPFR_RNDN);

    auto component = [&](Real& out, const mpz_class& int_part, const mpz_class& root_mult) {
        if (root_mult == 0) {
            if (mpfr_set_z(out.raw(), int_part.get_mpz_t(), MPFR_RNDN) != 0) {
                inexact = true;
                err = detail::eadd(err, out.ulp());
            }
            return;
        }
        inexact = true;
        Real m(prec);
        mpfr_mul_z(m.raw(), h.raw(), root_mult.get_mpz_t(), MPFR_RNDN);
        mpfr_add_z(out.raw(), m.raw(), int_part.get_mpz_t(), MPFR_RNDN);
        Real scale = Real::of_mpz(abs(root_mult), detail::kErrPrec, MPFR_RNDU);
        err = detail::eadd(err, detail::emul(scale, h.ulp()));
        err = detail::eadd(err, detail::eadd(m.ulp(), out.ulp()));
    };
    component(re, z.coeff(0), t_re);
    component(im, z.coeff(2), t_im);
    if (!inexact) err = Real(detail::kErrPrec);
    return {std::move(re), std::move(im), std::move(err)};
}

}  // namespace wecomp
