#pragma once

// Dense GF(2) linear algebra on 64-bit word-packed rows. Bit i of a vector
// lives in word i/64 at position i%64 (little-endian within the word). All
// routines keep the bits past size() zeroed so popcount and equality can work
// on whole words.

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wecomp/errors.hpp"

namespace wecomp {

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

    static BitVector from_string(std::string_view bits) {
        BitVector v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            char c = bits[i];
            if (c == '1')
                v.set(i, true);
            else if (c != '0')
                throw InputError("bit string may contain only 0 and 1");
        }
        return v;
    }

    std::size_t size() const { return size_; }

    bool get(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool b) {
        std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (b)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    void xor_with(const BitVector& o) {
        if (o.size_ != size_) throw InternalError("BitVector size mismatch in xor");
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    }

    std::size_t popcount() const {
        std::size_t n = 0;
        for (std::uint64_t w : words_) n += std::size_t(std::popcount(w));
        return n;
    }

    bool any() const {
        for (std::uint64_t w : words_)
            if (w) return true;
        return false;
    }

    /// Parity of the AND with another vector of the same size.
    bool dot(const BitVector& o) const {
        if (o.size_ != size_) throw InternalError("BitVector size mismatch in dot");
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & o.words_[w];
        return std::popcount(acc) & 1u;
    }

    /// Copies into a vector of larger size, keeping bit positions.
    BitVector resized(std::size_t n) const {
        BitVector v(n);
        std::size_t copy = std::min(v.words_.size(), words_.size());
        for (std::size_t w = 0; w < copy; ++w) v.words_[w] = words_[w];
        v.clear_tail();
        return v;
    }

    std::string to_string() const {
        std::string s(size_, '0');
        for (std::size_t i = 0; i < size_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    bool operator==(const BitVector&) const = default;
    auto operator<=>(const BitVector&) const = default;

private:
    void clear_tail() {
        if (size_ & 63) words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

inline std::size_t hamming_weight(const BitVector& v) { return v.popcount(); }

/// Row-major bit matrix. Rows are independently word-packed so whole-row XOR
/// is a word loop. Zero-row and zero-column matrices are legal.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), words_(rows * wpr_, 0) {}

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    static BitMatrix from_rows(const std::vector<BitVector>& rows, std::size_t cols) {
        BitMatrix m(rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) throw InternalError("row length mismatch");
            auto src = rows[r].words();
            for (std::size_t w = 0; w < m.wpr_; ++w) m.words_[r * m.wpr_ + w] = src[w];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool get(std::size_t r, std::size_t c) const {
        return (words_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
    }

    void set(std::size_t r, std::size_t c, bool b) {
        std::uint64_t mask = std::uint64_t{1} << (c & 63);
        if (b)
            words_[r * wpr_ + (c >> 6)] |= mask;
        else
            words_[r * wpr_ + (c >> 6)] &= ~mask;
    }

    std::span<const std::uint64_t> row_words(std::size_t r) const {
        return {words_.data() + r * wpr_, wpr_};
    }

    BitVector row(std::size_t r) const {
        BitVector v(cols_);
        auto src = row_words(r);
        auto dst = v.words();
        for (std::size_t w = 0; w < wpr_; ++w) dst[w] = src[w];
        return v;
    }

    void set_row(std::size_t r, const BitVector& v) {
        if (v.size() != cols_) throw InternalError("row length mismatch");
        auto src = v.words();
        for (std::size_t w = 0; w < wpr_; ++w) words_[r * wpr_ + w] = src[w];
    }

    void xor_rows(std::size_t dst, std::size_t src) {
        std::uint64_t* d = words_.data() + dst * wpr_;
        const std::uint64_t* s = words_.data() + src * wpr_;
        for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::uint64_t* pa = words_.data() + a * wpr_;
        std::uint64_t* pb = words_.data() + b * wpr_;
        for (std::size_t w = 0; w < wpr_; ++w) std::swap(pa[w], pb[w]);
    }

    bool row_is_zero(std::size_t r) const {
        const std::uint64_t* p = words_.data() + r * wpr_;
        for (std::size_t w = 0; w < wpr_; ++w)
            if (p[w]) return false;
        return true;
    }

    BitMatrix transposed() const {
        BitMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t w = 0; w < wpr_; ++w) {
                std::uint64_t word = words_[r * wpr_ + w];
                while (word) {
                    unsigned b = unsigned(std::countr_zero(word));
                    t.set(w * 64 + b, r, true);
                    word &= word - 1;
                }
            }
        return t;
    }

    bool operator==(const BitMatrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> words_;
};

namespace detail {

/// In-place reduced row echelon form; returns pivot column per pivot row.
/// Deterministic: scans columns left to right, takes the first row with a
/// nonzero entry.
inline std::vector<std::size_t> rref(BitMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && !m.get(pivot, col)) ++pivot;
        if (pivot == m.rows()) continue;
        m.swap_rows(row, pivot);
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != row && m.get(r, col)) m.xor_rows(r, row);
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace detail

inline std::size_t rank(const BitMatrix& m) {
    BitMatrix work = m;
    return detail::rref(work).size();
}

/// Basis of the right kernel {x : m x = 0}, one vector per free column,
/// ordered by free column index. For a matrix with no rows this is the
/// standard basis of the full space.
inline std::vector<BitVector> kernel_basis(const BitMatrix& m) {
    BitMatrix work = m;
    auto pivots = detail::rref(work);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<BitVector> basis;
    for (std::size_t fc = 0; fc < m.cols(); ++fc) {
        if (is_pivot[fc]) continue;
        BitVector v(m.cols());
        v.set(fc, true);
        for (std::size_t pr = 0; pr < pivots.size(); ++pr)
            if (work.get(pr, fc)) v.set(pivots[pr], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

struct AffineSolution {
    bool feasible = false;
    BitVector particular;           ///< one solution (empty when infeasible)
    std::vector<BitVector> kernel;  ///< basis of the homogeneous solutions
};

/// Solves m x = rhs over GF(2). Free variables are set to zero in the
/// particular solution.
inline AffineSolution solve_affine(const BitMatrix& m, const BitVector& rhs) {
    if (rhs.size() != m.rows()) throw InternalError("rhs size mismatch");
    BitMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto src = m.row_words(r);
        for (std::size_t c = 0; c < m.cols(); ++c)
            if ((src[c >> 6] >> (c & 63)) & 1u) aug.set(r, c, true);
        if (rhs.get(r)) aug.set(r, m.cols(), true);
    }
    // Forward elimination restricted to the coefficient columns, so the
    // augmented column never becomes a pivot.
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < aug.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < aug.rows() && !aug.get(pivot, col)) ++pivot;
        if (pivot == aug.rows()) continue;
        aug.swap_rows(row, pivot);
        for (std::size_t r = 0; r < aug.rows(); ++r)
            if (r != row && aug.get(r, col)) aug.xor_rows(r, row);
        pivots.push_back(col);
        ++row;
    }
    AffineSolution sol;
    for (std::size_t r = row; r < aug.rows(); ++r)
        if (aug.get(r, m.cols())) return sol;  // 0 = 1
    sol.feasible = true;
    sol.particular = BitVector(m.cols());
    for (std::size_t pr = 0; pr < pivots.size(); ++pr)
        if (aug.get(pr, m.cols())) sol.particular.set(pivots[pr], true);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    for (std::size_t fc = 0; fc < m.cols(); ++fc) {
        if (is_pivot[fc]) continue;
        BitVector v(m.cols());
        v.set(fc, true);
        for (std::size_t pr = 0; pr < pivots.size(); ++pr)
            if (aug.get(pr, fc)) v.set(pivots[pr], true);
        sol.kernel.push_back(std::move(v));
    }
    return sol;
}

/// Affine form c0 + <coeffs, x> over GF(2).
struct AffineForm {
    BitVector coeffs;
    bool constant = false;

    explicit AffineForm(std::size_t vars = 0) : coeffs(vars) {}

    void xor_with(const AffineForm& o) {
        coeffs.xor_with(o.coeffs);
        constant ^= o.constant;
    }

    bool eval(const BitVector& assignment) const {
        return constant ^ coeffs.dot(assignment);
    }

    bool is_zero() const { return !constant && !coeffs.any(); }

    bool operator==(const AffineForm&) const = default;
};

}  // namespace wecomp
