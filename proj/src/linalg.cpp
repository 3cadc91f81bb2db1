#include "qsteiner/linalg.hpp"

#include "qsteiner/error.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace qsteiner {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols)
{
}

ExactMatrix ExactMatrix::identity(std::size_t n)
{
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

ExactMatrix ExactMatrix::transpose() const
{
    ExactMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

ExactMatrix ExactMatrix::shifted(const Rational& s) const
{
    if (rows_ != cols_)
        throw DimensionMismatch("shifted: matrix is not square");
    ExactMatrix m = *this;
    for (std::size_t i = 0; i < rows_; ++i)
        m(i, i) -= s;
    return m;
}

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& other)
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionMismatch("matrix sum: shape mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i)
        entries_[i] += other.entries_[i];
    return *this;
}

ExactMatrix& ExactMatrix::operator-=(const ExactMatrix& other)
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionMismatch("matrix difference: shape mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i)
        entries_[i] -= other.entries_[i];
    return *this;
}

ExactMatrix& ExactMatrix::operator*=(const Rational& s)
{
    for (auto& e : entries_)
        e *= s;
    return *this;
}

ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }
ExactMatrix operator*(const Rational& s, ExactMatrix a) { return a *= s; }

ExactMatrix mat_mul(const ExactMatrix& a, const ExactMatrix& b)
{
    if (a.cols() != b.rows())
        throw DimensionMismatch("mat_mul: " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " times " +
                                std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    ExactMatrix c(a.rows(), b.cols());
    Rational tmp;
    // i-k-j order so that the sparse 0/1 incidence matrices skip most work.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rational& aik = a(i, k);
            if (sgn(aik) == 0)
                continue;
            const bool unit = (aik == 1);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const Rational& bkj = b(k, j);
                if (sgn(bkj) == 0)
                    continue;
                if (unit) {
                    c(i, j) += bkj;
                } else {
                    tmp = aik * bkj;
                    c(i, j) += tmp;
                }
            }
        }
    }
    return c;
}

bool is_zero(const ExactMatrix& m)
{
    return std::all_of(m.entries().begin(), m.entries().end(),
                       [](const Rational& x) { return sgn(x) == 0; });
}

namespace {

// Each row multiplied by the lcm of its denominators.
std::vector<std::vector<Integer>> integer_rows(const ExactMatrix& m)
{
    std::vector<std::vector<Integer>> rows(m.rows(), std::vector<Integer>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Integer l(1);
        for (const Rational& x : m.row(r))
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Rational& x = m(r, c);
            if (sgn(x) == 0)
                continue;
            Integer scale = l / x.get_den();
            rows[r][c] = x.get_num() * scale;
        }
    }
    return rows;
}

} // namespace

std::size_t rank_exact(const ExactMatrix& m)
{
    auto a = integer_rows(m);
    const std::size_t nrows = m.rows();
    const std::size_t ncols = m.cols();
    Integer previous(1);
    Integer t1, t2;
    std::size_t rank = 0;

    for (std::size_t col = 0; col < ncols && rank < nrows; ++col) {
        std::size_t pivot = nrows;
        std::size_t best_bits = 0;
        for (std::size_t r = rank; r < nrows; ++r) {
            if (sgn(a[r][col]) == 0)
                continue;
            std::size_t bits = mpz_sizeinbase(a[r][col].get_mpz_t(), 2);
            if (pivot == nrows || bits < best_bits) {
                pivot = r;
                best_bits = bits;
            }
        }
        if (pivot == nrows)
            continue;
        std::swap(a[pivot], a[rank]);
        const Integer& p = a[rank][col];
        for (std::size_t r = rank + 1; r < nrows; ++r) {
            Integer& lead = a[r][col];
            const bool lead_zero = sgn(lead) == 0;
            for (std::size_t c = col + 1; c < ncols; ++c) {
                // a[r][c] = (p * a[r][c] - lead * a[rank][c]) / previous
                mpz_mul(t1.get_mpz_t(), p.get_mpz_t(), a[r][c].get_mpz_t());
                if (!lead_zero) {
                    mpz_mul(t2.get_mpz_t(), lead.get_mpz_t(), a[rank][c].get_mpz_t());
                    mpz_sub(t1.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
                }
                mpz_divexact(a[r][c].get_mpz_t(), t1.get_mpz_t(), previous.get_mpz_t());
            }
            lead = 0;
        }
        previous = p;
        ++rank;
    }
    return rank;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t reduce(const Integer& x, std::uint64_t p)
{
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    return mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(p));
}

} // namespace

std::size_t rank_mod_p(const ExactMatrix& m, std::uint64_t p)
{
    if (p < 2 || p >= (1ull << 62))
        throw InvalidArgument("rank_mod_p: modulus out of range");
    const std::size_t nrows = m.rows();
    const std::size_t ncols = m.cols();
    std::vector<std::uint64_t> a(nrows * ncols, 0);
    for (std::size_t r = 0; r < nrows; ++r) {
        for (std::size_t c = 0; c < ncols; ++c) {
            const Rational& x = m(r, c);
            if (sgn(x) == 0)
                continue;
            std::uint64_t den = reduce(x.get_den(), p);
            if (den == 0)
                throw InvalidArgument("rank_mod_p: denominator divisible by " + std::to_string(p));
            a[r * ncols + c] = mulmod(reduce(x.get_num(), p), powmod(den, p - 2, p), p);
        }
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < nrows; ++col) {
        std::size_t pivot = nrows;
        for (std::size_t r = rank; r < nrows; ++r) {
            if (a[r * ncols + col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot == nrows)
            continue;
        if (pivot != rank)
            for (std::size_t c = 0; c < ncols; ++c)
                std::swap(a[pivot * ncols + c], a[rank * ncols + c]);
        const std::uint64_t inv = powmod(a[rank * ncols + col], p - 2, p);
        for (std::size_t r = rank + 1; r < nrows; ++r) {
            std::uint64_t f = a[r * ncols + col];
            if (f == 0)
                continue;
            f = mulmod(f, inv, p);
            for (std::size_t c = col; c < ncols; ++c) {
                std::uint64_t sub = mulmod(f, a[rank * ncols + c], p);
                std::uint64_t& x = a[r * ncols + c];
                x = (x + p - sub) % p;
            }
        }
        ++rank;
    }
    return rank;
}

} // namespace qsteiner
