#pragma once

// Binary linear codes represented by generator matrices, their weight
// enumerators, and the combinators used by the amplitude and recovery
// pipelines. Enumeration walks codewords in Gray-code order so each step is
// one row XOR and an incremental weight update.

#include <gmpxx.h>

#include <array>
#include <bit>
#include <cstdint>
#include <istream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "wecomp/cyclotomic.hpp"
#include "wecomp/errors.hpp"
#include "wecomp/gf2.hpp"
#include "wecomp/real.hpp"
#include "wecomp/util.hpp"

namespace wecomp {

/// Whether the generator rows are read as a spanning set of the codeword set
/// (row space, each distinct word once) or as a formal multiset of all 2^k
/// row combinations.
enum class Semantics { codeword, multiset };

constexpr std::size_t kMaxLength = 1'000'000;
constexpr std::size_t kMaxEnumerationBits = 28;

class LinearCode {
public:
    LinearCode() = default;
    explicit LinearCode(BitMatrix gen) : gen_(std::move(gen)) {
        if (gen_.cols() > kMaxLength) throw InputError("code length exceeds limit");
    }

    static LinearCode identity(std::size_t n) { return LinearCode(BitMatrix::identity(n)); }

    std::size_t length() const { return gen_.cols(); }
    std::size_t dimension() const { return gen_.rows(); }
    const BitMatrix& generator() const { return gen_; }

    bool operator==(const LinearCode&) const = default;

private:
    BitMatrix gen_;
};

struct WeightDistribution {
    std::vector<mpz_class> counts;  ///< counts[i] = number of words of weight i

    std::size_t degree() const { return counts.empty() ? 0 : counts.size() - 1; }
    mpz_class total() const {
        mpz_class t = 0;
        for (const auto& c : counts) t += c;
        return t;
    }
    bool operator==(const WeightDistribution&) const = default;
};

namespace detail {

/// Rows actually enumerated: all of them for multiset semantics, a row-space
/// basis for codeword semantics.
inline std::vector<BitVector> enumeration_rows(const LinearCode& c, Semantics sem) {
    std::vector<BitVector> rows;
    if (sem == Semantics::multiset) {
        for (std::size_t r = 0; r < c.dimension(); ++r) rows.push_back(c.generator().row(r));
        return rows;
    }
    BitMatrix work = c.generator();
    std::size_t rk = rref(work).size();
    for (std::size_t r = 0; r < rk; ++r) rows.push_back(work.row(r));
    return rows;
}

inline void enumerate_range(const std::vector<std::vector<std::uint64_t>>& rows,
                            std::size_t wpr, std::uint64_t lo, std::uint64_t hi,
                            std::vector<std::uint64_t>& counts) {
    std::vector<std::uint64_t> word(wpr, 0);
    std::uint64_t g = lo ^ (lo >> 1);
    std::size_t w = 0;
    for (std::uint64_t bits = g; bits;) {
        unsigned r = unsigned(std::countr_zero(bits));
        bits &= bits - 1;
        for (std::size_t j = 0; j < wpr; ++j) word[j] ^= rows[r][j];
    }
    for (std::size_t j = 0; j < wpr; ++j) w += std::size_t(std::popcount(word[j]));
    counts[w] += 1;
    for (std::uint64_t i = lo + 1; i < hi; ++i) {
        const auto& row = rows[std::size_t(std::countr_zero(i))];
        std::ptrdiff_t delta = 0;
        for (std::size_t j = 0; j < wpr; ++j) {
            std::uint64_t nw = word[j] ^ row[j];
            delta += std::popcount(nw) - std::popcount(word[j]);
            word[j] = nw;
        }
        w = std::size_t(std::ptrdiff_t(w) + delta);
        counts[w] += 1;
    }
}

}  // namespace detail

inline WeightDistribution weight_distribution(const LinearCode& c,
                                              Semantics sem = Semantics::codeword,
                                              unsigned threads = 0) {
    std::size_t n = c.length();
    auto basis = detail::enumeration_rows(c, sem);
    std::size_t k = basis.size();
    if (k > kMaxEnumerationBits) throw ResourceError("enumeration dimension exceeds 2^28 budget");

    std::size_t wpr = (n + 63) / 64;
    if (wpr == 0) wpr = 1;
    std::vector<std::vector<std::uint64_t>> rows;
    for (const auto& b : basis) {
        std::vector<std::uint64_t> r(wpr, 0);
        auto ws = b.words();
        for (std::size_t j = 0; j < ws.size(); ++j) r[j] = ws[j];
        rows.push_back(std::move(r));
    }

    std::uint64_t total = std::uint64_t{1} << k;
    unsigned nthreads = resolve_threads(threads);
    if (std::uint64_t(nthreads) > total) nthreads = unsigned(total);

    std::vector<std::vector<std::uint64_t>> partial(
        nthreads, std::vector<std::uint64_t>(n + 1, 0));
    if (nthreads <= 1) {
        detail::enumerate_range(rows, wpr, 0, total, partial[0]);
    } else {
        std::vector<std::thread> workers;
        std::uint64_t chunk = total / nthreads;
        for (unsigned t = 0; t < nthreads; ++t) {
            std::uint64_t lo = chunk * t;
            std::uint64_t hi = (t + 1 == nthreads) ? total : lo + chunk;
            workers.emplace_back([&rows, wpr, lo, hi, &counts = partial[t]] {
                detail::enumerate_range(rows, wpr, lo, hi, counts);
            });
        }
        for (auto& th : workers) th.join();
    }

    WeightDistribution d;
    d.counts.assign(n + 1, 0);
    for (const auto& p : partial)
        for (std::size_t i = 0; i <= n; ++i)
            if (p[i]) d.counts[i] += static_cast<unsigned long>(p[i]);
    return d;
}

inline mpq_class mpq_pow(const mpq_class& q, long e) {
    if (e == 0) return 1;
    bool invert = e < 0;
    unsigned long mag = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    if (invert && q == 0) throw InputError("zero raised to a negative power");
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num().get_mpz_t(), mag);
    mpz_pow_ui(den.get_mpz_t(), q.get_den().get_mpz_t(), mag);
    mpq_class r = invert ? mpq_class(den, num) : mpq_class(num, den);
    r.canonicalize();
    return r;
}

inline mpq_class evaluate(const WeightDistribution& d, const mpq_class& q) {
    mpq_class acc = 0;
    for (std::size_t i = d.counts.size(); i-- > 0;) acc = acc * q + d.counts[i];
    return acc;
}

inline mpq_class evaluate(const LinearCode& c, const mpq_class& q,
                          Semantics sem = Semantics::codeword, unsigned threads = 0) {
    return evaluate(weight_distribution(c, sem, threads), q);
}

inline CycInt evaluate_at_omega(const WeightDistribution& d) {
    std::array<mpz_class, 8> m{};
    for (std::size_t i = 0; i < d.counts.size(); ++i) m[i & 7] += d.counts[i];
    return {m[0] - m[4], m[1] - m[5], m[2] - m[6], m[3] - m[7]};
}

inline CycInt evaluate_at_omega(const LinearCode& c, Semantics sem = Semantics::codeword,
                                unsigned threads = 0) {
    return evaluate_at_omega(weight_distribution(c, sem, threads));
}

inline ApproxComplex evaluate(const WeightDistribution& d, const ApproxComplex& q) {
    ApproxComplex acc(q.prec());
    for (std::size_t i = d.counts.size(); i-- > 0;)
        acc = ApproxComplex::add(ApproxComplex::mul(acc, q),
                                 ApproxComplex::of_mpz(d.counts[i], q.prec()));
    return acc;
}

// ---------------------------------------------------------------------------
// Combinators.

inline LinearCode pad_zeros(const LinearCode& c, std::size_t extra) {
    if (c.length() + extra > kMaxLength) throw InputError("padded length exceeds limit");
    BitMatrix g(c.dimension(), c.length() + extra);
    for (std::size_t r = 0; r < c.dimension(); ++r)
        g.set_row(r, c.generator().row(r).resized(c.length() + extra));
    return LinearCode(std::move(g));
}

/// Block-diagonal stack; the enumerator is the product of the parts.
inline LinearCode direct_sum(const LinearCode& a, const LinearCode& b) {
    std::size_t n = a.length() + b.length();
    if (n > kMaxLength) throw InputError("direct sum length exceeds limit");
    BitMatrix g(a.dimension() + b.dimension(), n);
    for (std::size_t r = 0; r < a.dimension(); ++r)
        for (std::size_t c = 0; c < a.length(); ++c)
            if (a.generator().get(r, c)) g.set(r, c, true);
    for (std::size_t r = 0; r < b.dimension(); ++r)
        for (std::size_t c = 0; c < b.length(); ++c)
            if (b.generator().get(r, c)) g.set(a.dimension() + r, a.length() + c, true);
    return LinearCode(std::move(g));
}

/// Wreath-style sum on length n1*n2: columns are pairs (l1, l2) in row-major
/// order with l1 outer. A-rows replicate each of their bits n2 times, B-rows
/// tile n1 times. A word a + b has weight |a|(n2 - |b|) + |b|(n1 - |a|).
inline LinearCode wreath_sum(const LinearCode& a, const LinearCode& b) {
    std::size_t n1 = a.length(), n2 = b.length();
    if (n1 == 0 || n2 == 0) throw InputError("wreath sum requires positive lengths");
    if (n1 * n2 > kMaxLength) throw InputError("wreath sum length exceeds limit");
    BitMatrix g(a.dimension() + b.dimension(), n1 * n2);
    for (std::size_t r = 0; r < a.dimension(); ++r)
        for (std::size_t l1 = 0; l1 < n1; ++l1)
            if (a.generator().get(r, l1))
                for (std::size_t l2 = 0; l2 < n2; ++l2) g.set(r, l1 * n2 + l2, true);
    for (std::size_t r = 0; r < b.dimension(); ++r)
        for (std::size_t l2 = 0; l2 < n2; ++l2)
            if (b.generator().get(r, l2))
                for (std::size_t l1 = 0; l1 < n1; ++l1)
                    g.set(a.dimension() + r, l1 * n2 + l2, true);
    return LinearCode(std::move(g));
}

/// Closed form for the wreath enumerator:
///   w(q) = sum_a q^(n2 |a|) * w_B(q^(n1 - 2|a|))
/// where a ranges over the chosen enumeration of A. Needs q != 0 because the
/// inner exponent goes negative once 2|a| > n1.
inline mpq_class wreath_eval(const LinearCode& a, const WeightDistribution& wb,
                             const mpq_class& q, Semantics sem_a = Semantics::multiset,
                             unsigned threads = 0) {
    if (q == 0) throw InputError("wreath closed form needs q != 0");
    long n1 = long(a.length());
    long n2 = long(wb.degree());
    WeightDistribution wa = weight_distribution(a, sem_a, threads);
    mpq_class acc = 0;
    for (std::size_t w = 0; w < wa.counts.size(); ++w) {
        if (wa.counts[w] == 0) continue;
        mpq_class inner = evaluate(wb, mpq_pow(q, n1 - 2 * long(w)));
        acc += mpq_class(wa.counts[w]) * mpq_pow(q, n2 * long(w)) * inner;
    }
    return acc;
}

inline CycInt wreath_eval_omega(const LinearCode& a, const WeightDistribution& wb,
                                Semantics sem_a = Semantics::multiset, unsigned threads = 0) {
    long n1 = long(a.length());
    long n2 = long(wb.degree());
    WeightDistribution wa = weight_distribution(a, sem_a, threads);
    CycInt acc;
    for (std::size_t w = 0; w < wa.counts.size(); ++w) {
        if (wa.counts[w] == 0) continue;
        long e = n1 - 2 * long(w);
        CycInt inner;
        for (std::size_t i = 0; i < wb.counts.size(); ++i)
            if (wb.counts[i] != 0)
                inner += CycInt::integer(wb.counts[i]) * CycInt::omega_pow(e * long(i));
        acc += CycInt::integer(wa.counts[w]) * CycInt::omega_pow(n2 * long(w)) * inner;
    }
    return acc;
}

/// C(a, k) = pad_zeros(C, a) wreath I_k, the noise-amplified query family.
inline LinearCode amplified_code(const LinearCode& c, std::size_t a, std::size_t k) {
    return wreath_sum(pad_zeros(c, a), LinearCode::identity(k));
}

/// Exact value of w_{C(a,k)} at omega from the base distribution alone:
///   sum_w cnt[w] * omega^(k w) * (1 + omega^(n + a - 2w))^k.
inline CycInt amplified_eval_omega(const WeightDistribution& base, std::size_t n,
                                   std::size_t a, std::size_t k) {
    std::array<std::optional<CycInt>, 8> pow_cache;
    CycInt acc;
    for (std::size_t w = 0; w < base.counts.size(); ++w) {
        if (base.counts[w] == 0) continue;
        long e = (long(n + a) - 2 * long(w)) % 8;
        if (e < 0) e += 8;
        if (!pow_cache[e])
            pow_cache[e] = (CycInt::integer(1) + CycInt::omega_pow(e)).pow(k);
        acc += CycInt::integer(base.counts[w]) * CycInt::omega_pow(long(k * w)) * *pow_cache[e];
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Packed-integer transport of a distribution: digits base 2^n.

inline mpz_class pack_distribution(const WeightDistribution& d, std::size_t n) {
    mpz_class acc = 0;
    for (std::size_t i = d.counts.size(); i-- > 0;) {
        acc <<= n;
        acc += d.counts[i];
    }
    return acc;
}

inline mpz_class pack_eval(const LinearCode& c, Semantics sem = Semantics::codeword,
                           unsigned threads = 0) {
    return pack_distribution(weight_distribution(c, sem, threads), c.length());
}

inline WeightDistribution unpack_coefficients(const mpz_class& v, std::size_t n) {
    if (v <= 0) throw InputError("packed enumerator must be positive");
    WeightDistribution d;
    d.counts.assign(n + 1, 0);
    if (n == 0) {
        if (v != 1) throw InputError("packed enumerator of a length-0 code must be 1");
        d.counts[0] = 1;
        return d;
    }
    mpz_class rest = v;
    std::size_t digit = 0;
    while (rest > 0) {
        if (digit > n)
            throw InputError("packed value has more than n+1 digits base 2^n");
        mpz_class r;
        mpz_fdiv_r_2exp(r.get_mpz_t(), rest.get_mpz_t(), n);
        d.counts[digit] = r;
        mpz_fdiv_q_2exp(rest.get_mpz_t(), rest.get_mpz_t(), n);
        ++digit;
    }
    return d;
}

// ---------------------------------------------------------------------------
// Text format: header "n k", then k rows of n characters over {0,1}.
// '#' starts a comment; blank lines are skipped.

inline LinearCode parse_code(std::istream& in) {
    auto next_line = [&](std::string& line) -> bool {
        while (std::getline(in, line)) {
            if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
            while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                                     line.back() == '\r'))
                line.pop_back();
            std::size_t start = line.find_first_not_of(" \t");
            if (start == std::string::npos) continue;
            line.erase(0, start);
            return true;
        }
        return false;
    };
    std::string line;
    if (!next_line(line)) throw InputError("missing code header line");
    std::istringstream header(line);
    long n = -1, k = -1;
    if (!(header >> n >> k) || n < 0 || k < 0)
        throw InputError("code header must be two nonnegative integers: n k");
    std::string tail;
    if (header >> tail) throw InputError("unexpected token after code header");
    if (std::size_t(n) > kMaxLength) throw InputError("code length exceeds limit");
    BitMatrix g{std::size_t(k), std::size_t(n)};
    if (n > 0) {
        for (long r = 0; r < k; ++r) {
            if (!next_line(line)) throw InputError("missing generator row");
            if (long(line.size()) != n)
                throw InputError("generator row has wrong length");
            for (long c = 0; c < n; ++c) {
                if (line[c] == '1')
                    g.set(std::size_t(r), std::size_t(c), true);
                else if (line[c] != '0')
                    throw InputError("generator rows may contain only 0 and 1");
            }
        }
    }
    if (next_line(line)) throw InputError("unexpected trailing content in code file");
    return LinearCode(std::move(g));
}

inline LinearCode parse_code_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_code(in);
}

inline std::string code_to_text(const LinearCode& c) {
    std::string out = std::to_string(c.length()) + " " + std::to_string(c.dimension()) + "\n";
    for (std::size_t r = 0; r < c.dimension(); ++r) out += c.generator().row(r).to_string() + "\n";
    return out;
}

/// Uniform random generator matrix; used by benchmarks and test corpora.
inline LinearCode random_code(std::size_t n, std::size_t k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    BitMatrix g(k, n);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (rng() & 1) g.set(r, c, true);
    return LinearCode(std::move(g));
}

}  // namespace wecomp
