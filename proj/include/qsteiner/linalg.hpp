#pragma once

// Dense exact linear algebra over Q.

#include "qsteiner/exactq.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qsteiner {

class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols);

    static ExactMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<const Rational> row(std::size_t r) const
    {
        return {entries_.data() + r * cols_, cols_};
    }
    std::span<const Rational> entries() const { return entries_; }

    ExactMatrix transpose() const;

    /// this - s*I; square matrices only.
    ExactMatrix shifted(const Rational& s) const;

    ExactMatrix& operator+=(const ExactMatrix& other);
    ExactMatrix& operator-=(const ExactMatrix& other);
    ExactMatrix& operator*=(const Rational& s);

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> entries_;
};

ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b);
ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b);
ExactMatrix operator*(const Rational& s, ExactMatrix a);

/// Exact product. Throws DimensionMismatch when A.cols() != B.rows().
ExactMatrix mat_mul(const ExactMatrix& a, const ExactMatrix& b);

/// Rank over Q by fraction-free (Bareiss) elimination on the row-scaled
/// integer matrix. Pivot: nonzero entry of smallest bit length in the current
/// column, lowest row index on ties.
std::size_t rank_exact(const ExactMatrix& m);

/// Rank of m reduced modulo the prime p (p < 2^62). Throws InvalidArgument
/// when some denominator is divisible by p. Always <= rank_exact(m).
std::size_t rank_mod_p(const ExactMatrix& m, std::uint64_t p);

bool is_zero(const ExactMatrix& m);

} // namespace qsteiner
