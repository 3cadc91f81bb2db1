#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library: plain integers mod a prime, naive rational elimination and
// bitmask search.

#include <gmpxx.h>

#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

// [n k]_q from the product formula with big integers (0 <= k <= n).
inline mpz_class gauss_binom(unsigned n, unsigned k, unsigned long q)
{
    if (k > n)
        return 0;
    mpz_class num = 1, den = 1, qq = q;
    for (unsigned i = 0; i < k; ++i) {
        mpz_class a, b;
        mpz_pow_ui(a.get_mpz_t(), qq.get_mpz_t(), n - i);
        mpz_pow_ui(b.get_mpz_t(), qq.get_mpz_t(), i + 1);
        num *= a - 1;
        den *= b - 1;
    }
    return num / den;
}

// RREF over F_p, p prime; returns the rank and leaves the echelon form in m.
inline unsigned rref_mod_p(std::vector<std::vector<unsigned>>& m, unsigned p)
{
    auto inv = [p](unsigned a) {
        for (unsigned x = 1; x < p; ++x)
            if (a * x % p == 1)
                return x;
        return 0u;
    };
    unsigned rank = 0;
    const unsigned cols = m.empty() ? 0 : static_cast<unsigned>(m[0].size());
    for (unsigned c = 0; c < cols && rank < m.size(); ++c) {
        unsigned piv = rank;
        while (piv < m.size() && m[piv][c] == 0)
            ++piv;
        if (piv == m.size())
            continue;
        std::swap(m[piv], m[rank]);
        unsigned s = inv(m[rank][c]);
        for (auto& v : m[rank])
            v = v * s % p;
        for (unsigned r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][c] == 0)
                continue;
            unsigned f = m[r][c];
            for (unsigned j = 0; j < cols; ++j)
                m[r][j] = (m[r][j] + p * p - f * m[rank][j]) % p;
        }
        ++rank;
    }
    return rank;
}

// All k-subspaces of F_p^n as RREF matrices, found by running over every
// k x n matrix.
inline std::set<std::vector<std::vector<unsigned>>> all_subspaces(unsigned n, unsigned k, unsigned p)
{
    std::set<std::vector<std::vector<unsigned>>> out;
    std::uint64_t total = 1;
    for (unsigned i = 0; i < n * k; ++i)
        total *= p;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<std::vector<unsigned>> m(k, std::vector<unsigned>(n));
        std::uint64_t c = code;
        for (unsigned r = 0; r < k; ++r)
            for (unsigned j = 0; j < n; ++j) {
                m[r][j] = static_cast<unsigned>(c % p);
                c /= p;
            }
        if (rref_mod_p(m, p) == k)
            out.insert(m);
    }
    return out;
}

// Gauss-Jordan over Q with no pivoting strategy.
inline std::size_t rank_rational(std::vector<std::vector<mpq_class>> m)
{
    std::size_t rank = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][c] == 0)
            ++piv;
        if (piv == m.size())
            continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][c] == 0)
                continue;
            mpq_class f = m[r][c] / m[rank][c];
            for (std::size_t j = c; j < cols; ++j)
                m[r][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

// Lines of PG(3,2) as 15-bit masks over the nonzero vectors 1..15 of F_2^4.
inline std::vector<std::uint32_t> pg32_lines()
{
    std::set<std::uint32_t> lines;
    for (unsigned a = 1; a < 16; ++a)
        for (unsigned b = a + 1; b < 16; ++b)
            lines.insert((1u << (a - 1)) | (1u << (b - 1)) | (1u << ((a ^ b) - 1)));
    return {lines.begin(), lines.end()};
}

// Number of partitions of the 15 points of PG(3,2) into lines.
inline std::size_t count_pg32_spreads()
{
    const auto lines = pg32_lines();
    std::size_t count = 0;
    auto rec = [&](auto&& self, std::uint32_t covered) -> void {
        if (covered == 0x7fff) {
            ++count;
            return;
        }
        unsigned first = 0;
        while (covered >> first & 1u)
            ++first;
        for (std::uint32_t l : lines)
            if ((l >> first & 1u) && !(l & covered))
                self(self, covered | l);
    };
    rec(rec, 0);
    return count;
}

} // namespace oracle
