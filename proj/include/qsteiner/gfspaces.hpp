#pragma once

// Subspaces of F_q^n: canonical RREF representatives, the canonical
// enumeration of Gr_{n,k}(F_q), intersections, the subspace-lattice Moebius
// function, and brute-force oracles for the counting lemmas.

#include "qsteiner/exactq.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qsteiner {

/// Field element, encoded as the integer whose base-p digits are the
/// coefficients of the polynomial representative (digit i = coefficient of
/// x^i).
using Elem = std::uint8_t;

/// F_q with q prime (q <= 251) or q in {4, 8, 9}. The extension fields use
/// the fixed moduli x^2+x+1, x^3+x+1 over F_2 and x^2+2x+2 over F_3. Tables
/// are immutable after construction and safe to share between threads.
class FieldSpec {
public:
    explicit FieldSpec(unsigned q);

    static std::shared_ptr<const FieldSpec> make(unsigned q);
    static bool supported(unsigned q);

    unsigned q() const { return q_; }
    unsigned characteristic() const { return p_; }
    unsigned degree() const { return e_; }
    /// Monic modulus, lowest coefficient first; {0, 1} (i.e. x) for prime q.
    const std::vector<unsigned>& modulus() const { return modulus_; }

    Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
    Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem inv(Elem a) const { return inv_[a]; }

private:
    void check_axioms() const;

    unsigned q_;
    unsigned p_ = 0;
    unsigned e_ = 0;
    std::vector<unsigned> modulus_;
    std::vector<Elem> add_, mul_, neg_, inv_;
};

/// A subspace stored as its reduced row echelon basis (dim rows, ambient_n
/// columns, row-major). Two subspaces are equal iff their bases are
/// identical. `index` is the position in the canonical enumeration when
/// known, otherwise npos.
struct Subspace {
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    unsigned ambient_n = 0;
    unsigned dim = 0;
    std::vector<Elem> basis;
    std::size_t index = npos;

    Elem at(unsigned row, unsigned col) const { return basis[row * ambient_n + col]; }
    std::vector<unsigned> pivots() const;
    std::string key() const { return std::string(basis.begin(), basis.end()); }

    friend bool operator==(const Subspace& a, const Subspace& b)
    {
        return a.ambient_n == b.ambient_n && a.dim == b.dim && a.basis == b.basis;
    }
};

/// Reduces `m` (rows x cols) to RREF in place and returns its rank; the first
/// `rank` rows hold the echelon basis.
unsigned rref_in_place(std::vector<Elem>& m, unsigned rows, unsigned cols, const FieldSpec& field);

unsigned rank_over_field(std::vector<Elem> m, unsigned rows, unsigned cols, const FieldSpec& field);

/// Canonical subspace spanned by the rows of `rows` (each of length n).
Subspace span_of(std::span<const Elem> rows, unsigned nrows, unsigned n, const FieldSpec& field);

/// Canonical order: pivot sets in colexicographic order, then the non-pivot
/// entries read row-major as base-q digits. Only meaningful for equal dims.
bool canonical_less(const Subspace& a, const Subspace& b);

/// Visits Gr_{n,k}(F_q) in canonical order; stops early when `visit`
/// returns false.
void for_each_subspace(unsigned n, unsigned k, const FieldSpec& field,
                       const std::function<bool(const Subspace&)>& visit);

/// The canonical enumeration of Gr_{n,k}(F_q) with a reverse index.
class Grassmannian {
public:
    /// Throws GuardExceeded when [n k]_q > max_size.
    Grassmannian(unsigned n, unsigned k, std::shared_ptr<const FieldSpec> field,
                 std::size_t max_size = 2'000'000);

    unsigned n() const { return n_; }
    unsigned k() const { return k_; }
    const FieldSpec& field() const { return *field_; }
    std::shared_ptr<const FieldSpec> field_ptr() const { return field_; }

    std::size_t size() const { return items_.size(); }
    const Subspace& operator[](std::size_t i) const { return items_[i]; }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

    std::optional<std::size_t> index_of(const Subspace& s) const;

private:
    unsigned n_;
    unsigned k_;
    std::shared_ptr<const FieldSpec> field_;
    std::vector<Subspace> items_;
    std::unordered_map<std::string, std::size_t> lookup_;
};

std::vector<Subspace> enumerate_subspaces(unsigned n, unsigned k, const FieldSpec& field);

/// dim(A cap B) = dim A + dim B - rank of the stacked bases.
unsigned intersection_dim(const Subspace& a, const Subspace& b, const FieldSpec& field);

/// A cap B itself (Zassenhaus).
Subspace intersection(const Subspace& a, const Subspace& b, const FieldSpec& field);

bool contains(const Subspace& outer, const Subspace& inner, const FieldSpec& field);

/// All j-dimensional subspaces of W, as subspaces of the ambient space.
std::vector<Subspace> subspaces_of(const Subspace& w, unsigned j, const FieldSpec& field);

/// Moebius function of the subspace lattice on an interval of length d:
/// (-1)^d q^{C(d,2)}.
Integer mobius_interval(unsigned d, unsigned long q);

/// Number of m-sets of projective points spanning a d-space, by Moebius
/// inversion over the subspace lattice.
Integer spanning_count_formula(unsigned m, unsigned d, unsigned long q);

/// Exhaustive count over all m-subsets of projective points of F_q^d.
/// Refuses (GuardExceeded) when q^d > 2^16 or there are more than
/// `subset_budget` subsets to visit.
Integer spanning_count_bruteforce(unsigned m, unsigned d, const FieldSpec& field,
                                  std::uint64_t subset_budget = 5'000'000);

/// Counts the same quantity by growing ordered point sequences one point at a
/// time, tracking only the dimension of the running span; divides by m!.
Integer spanning_count_growth(unsigned m, unsigned d, unsigned long q);

struct IntersectionCounts {
    Integer equal_to_a;      // #{U in Gr(n,u) : U cap B = A}
    Integer dimension_a;     // #{U in Gr(n,u) : dim(U cap B) = a}
    friend bool operator==(const IntersectionCounts&, const IntersectionCounts&) = default;
};

/// Closed forms q^{(b-a)(u-a)}[n-b u-a] and q^{(b-a)(u-a)}[b a][n-b u-a].
IntersectionCounts count_fixed_intersection(unsigned a, unsigned b, unsigned u, unsigned n,
                                            unsigned long q);

/// Exhaustive counterpart with B = <e_1..e_b>, A = <e_1..e_a>. Refuses when
/// [n u]_q > max_enumerated.
IntersectionCounts count_fixed_intersection_bruteforce(unsigned a, unsigned b, unsigned u,
                                                       unsigned n, const FieldSpec& field,
                                                       std::size_t max_enumerated = 2000);

/// Sum over all subspaces U of W of mu(U, W), found by enumerating them.
Integer mobius_delta_sum(const Subspace& w, const FieldSpec& field);

/// True iff mobius_delta_sum(W) equals delta(0, W) and agrees with
/// sum_j [d j] mu(d-j). Guard: dim W <= 4 and q <= 3.
bool mobius_delta_check(const Subspace& w, const FieldSpec& field);

} // namespace qsteiner
