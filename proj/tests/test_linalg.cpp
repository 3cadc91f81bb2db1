#include "oracles.hpp"

#include "qsteiner/error.hpp"
#include "qsteiner/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace qsteiner;

namespace {

ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi, unsigned target_rank = 0)
{
    std::uniform_int_distribution<int> d(lo, hi);
    if (target_rank == 0) {
        ExactMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = Rational(d(rng), 1 + static_cast<int>(rng() % 3));
        return m;
    }
    // Product of r x target and target x c factors: rank at most target.
    ExactMatrix a(r, target_rank), b(target_rank, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < target_rank; ++j)
            a(i, j) = d(rng);
    for (std::size_t i = 0; i < target_rank; ++i)
        for (std::size_t j = 0; j < c; ++j)
            b(i, j) = d(rng);
    return mat_mul(a, b);
}

std::vector<std::vector<mpq_class>> rows_of(const ExactMatrix& m)
{
    std::vector<std::vector<mpq_class>> out(m.rows(), std::vector<mpq_class>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[i][j] = m(i, j);
    return out;
}

} // namespace

TEST_CASE("mat_mul examples")
{
    ExactMatrix m(2, 3);
    m(0, 0) = 1;
    m(0, 2) = Rational(-3, 5);
    m(1, 1) = 7;
    CHECK(mat_mul(ExactMatrix::identity(2), m) == m);
    CHECK(mat_mul(m, ExactMatrix::identity(3)) == m);

    ExactMatrix a(1, 1), b(1, 1);
    a(0, 0) = Rational(2, 3);
    b(0, 0) = Rational(3, 2);
    CHECK(mat_mul(a, b)(0, 0) == 1);
    CHECK_THROWS_AS(mat_mul(m, m), DimensionMismatch);
}

TEST_CASE("rank examples")
{
    CHECK(rank_exact(ExactMatrix(4, 5)) == 0);
    CHECK(rank_exact(ExactMatrix(0, 3)) == 0);
    CHECK(rank_exact(ExactMatrix::identity(6)) == 6);
    CHECK(rank_mod_p(ExactMatrix::identity(5), 7) == 5);
    ExactMatrix m(2, 2);
    m(0, 0) = 2;
    m(0, 1) = 4;
    m(1, 0) = 1;
    m(1, 1) = 2;
    CHECK(rank_mod_p(m, 5) == 1);
    CHECK(rank_exact(m) == 1);
}

TEST_CASE("rank_exact matches naive rational elimination")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + rng() % 9, c = 1 + rng() % 9;
        unsigned target = static_cast<unsigned>(rng() % 5);
        ExactMatrix m = random_matrix(rng, r, c, -4, 4, target);
        CHECK(rank_exact(m) == oracle::rank_rational(rows_of(m)));
    }
}

TEST_CASE("rank chain: M, M^T and M M^T")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
        ExactMatrix m = random_matrix(rng, r, c, -3, 3, static_cast<unsigned>(rng() % 4));
        std::size_t rank = rank_exact(m);
        CHECK(rank_exact(m.transpose()) == rank);
        CHECK(rank_exact(mat_mul(m, m.transpose())) == rank);
    }
}

TEST_CASE("modular rank never exceeds the exact rank")
{
    std::mt19937_64 rng(9);
    const std::uint64_t primes[] = {1000003, 998244353, 2147483647};
    for (int trial = 0; trial < 40; ++trial) {
        ExactMatrix m = random_matrix(rng, 1 + rng() % 7, 1 + rng() % 7, -50, 50, static_cast<unsigned>(rng() % 4));
        std::size_t exact = rank_exact(m);
        bool some_equal = false;
        for (auto p : primes) {
            std::size_t rp = rank_mod_p(m, p);
            CHECK(rp <= exact);
            some_equal = some_equal || rp == exact;
        }
        CHECK(some_equal);
    }
    // Small primes can lose rank.
    ExactMatrix d(2, 2);
    d(0, 0) = 3;
    d(1, 1) = 1;
    CHECK(rank_mod_p(d, 3) == 1);
    CHECK(rank_exact(d) == 2);
}

TEST_CASE("large entries stay exact")
{
    // Hilbert matrices are nonsingular with tiny determinants.
    for (std::size_t n : {4u, 8u, 12u}) {
        ExactMatrix h(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                h(i, j) = Rational(1, static_cast<unsigned long>(i + j + 1));
        CHECK(rank_exact(h) == n);
        ExactMatrix s = h;
        for (std::size_t j = 0; j < n; ++j)
            s(n - 1, j) = h(0, j) * Rational(1, 3) - h(1, j) * 7;
        CHECK(rank_exact(s) == n - 1);
    }
}

TEST_CASE("matrix arithmetic helpers")
{
    ExactMatrix a = ExactMatrix::identity(3);
    ExactMatrix b = a.shifted(Rational(1, 2));
    CHECK(b(0, 0) == Rational(1, 2));
    CHECK(b(0, 1) == 0);
    CHECK(is_zero(a - a));
    CHECK((a + a) == Rational(2) * a);
    CHECK_THROWS_AS(a + ExactMatrix(2, 2), DimensionMismatch);
}
