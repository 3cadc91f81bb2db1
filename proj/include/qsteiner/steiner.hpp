#pragma once

// q-Steiner systems S_q(t,k,n): parameters, design verification, exact-cover
// enumeration and seeded sampling, the incidence matrix U, the Gram
// coefficients, the eigenvalues mu_r and the rank certificate for the
// dimension of the span of all characteristic vectors.

#include "qsteiner/gfspaces.hpp"
#include "qsteiner/grassmann.hpp"
#include "qsteiner/linalg.hpp"

#include <bitset>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qsteiner {

class ParamSet {
public:
    /// Requires 1 <= t <= k <= n and q a prime power.
    ParamSet(unsigned t, unsigned k, unsigned n, unsigned long q);

    unsigned t() const { return t_; }
    unsigned k() const { return k_; }
    unsigned n() const { return n_; }
    unsigned long q() const { return q_; }

    /// [k-i t-i] divides [n-i t-i] * lambda for every 0 <= i <= t.
    bool admissible(unsigned long lambda = 1) const;
    /// Human-readable reason when admissible() is false, empty otherwise.
    std::string inadmissibility_reason(unsigned long lambda = 1) const;
    bool n_at_least_2k() const { return n_ >= 2 * k_; }

    /// lambda_i for a design with the given lambda.
    Rational lambda_i(unsigned i, unsigned long lambda = 1) const;
    /// [n t] / [k t].
    Rational block_count() const;

    /// Field tables; throws InvalidArgument when q is not supported by FieldSpec.
    std::shared_ptr<const FieldSpec> field() const { return FieldSpec::make(static_cast<unsigned>(q_)); }

    std::string label() const;

    friend bool operator==(const ParamSet&, const ParamSet&) = default;

private:
    unsigned t_, k_, n_;
    unsigned long q_;
};

Rational lambda_i(const ParamSet& params, unsigned i, unsigned long lambda = 1);

/// Gr_{n,k} and Gr_{n,t} with, for every k-space, the indices of the
/// t-spaces it contains. Shared by search, verification and matrices.
class DesignSpace {
public:
    /// Throws GuardExceeded when [n k]_q > max_k_spaces or
    /// [n t]_q > max_t_spaces.
    explicit DesignSpace(const ParamSet& params, std::size_t max_k_spaces = 2000,
                         std::size_t max_t_spaces = 256);

    const ParamSet& params() const { return params_; }
    const FieldSpec& field() const { return *field_; }
    const Grassmannian& blocks() const { return *k_spaces_; }
    const Grassmannian& points() const { return *t_spaces_; }
    std::shared_ptr<const Grassmannian> blocks_ptr() const { return k_spaces_; }
    const std::vector<std::uint32_t>& contained(std::size_t block) const { return contained_[block]; }

private:
    ParamSet params_;
    std::shared_ptr<const FieldSpec> field_;
    std::shared_ptr<const Grassmannian> k_spaces_;
    std::shared_ptr<const Grassmannian> t_spaces_;
    std::vector<std::vector<std::uint32_t>> contained_;
};

/// A labeled system: sorted indices into the canonical order of Gr_{n,k}.
struct Design {
    std::vector<std::size_t> blocks;
    friend bool operator==(const Design&, const Design&) = default;
    friend auto operator<=>(const Design&, const Design&) = default;
};

struct DesignVerdict {
    bool ok = false;
    std::string message;
    std::optional<Subspace> witness;   // a t-space with the wrong coverage
    std::uint64_t witness_coverage = 0;
};

/// Coverage check for an arbitrary block list: every t-subspace of F_q^n must
/// lie in exactly lambda blocks. Throws InvalidArgument for blocks of the
/// wrong shape and GuardExceeded past `max_incidences` (blocks * [k t]).
DesignVerdict verify_design(const std::vector<Subspace>& blocks, const ParamSet& params,
                            unsigned long lambda = 1, std::uint64_t max_incidences = 50'000'000);

/// Same check for a design given by block indices.
DesignVerdict verify_design(const Design& design, const DesignSpace& space, unsigned long lambda = 1);

std::vector<Subspace> design_subspaces(const Design& design, const DesignSpace& space);

/// All labeled systems in lexicographic order of their block lists.
/// Requires [n t] <= 200 and [n k] <= 2000; throws GuardExceeded when more
/// than max_designs systems exist. Inadmissible parameters yield an empty
/// list.
std::vector<Design> enumerate_steiner(const DesignSpace& space, std::size_t max_designs = 200'000);

struct SampleResult {
    std::vector<Design> designs;
    bool partial = false;        // node budget ran out before `count` designs
    std::uint64_t nodes = 0;
};

/// Up to `count` distinct systems from randomized exact-cover descents driven
/// by a mt19937_64 seeded with `seed`. Deterministic for a given seed.
SampleResult sample_steiner(const DesignSpace& space, std::uint64_t seed, std::size_t count,
                            std::uint64_t node_budget = 20'000'000);

/// Rows: Gr_{n,k} in canonical order; columns: designs.
ExactMatrix incidence_matrix(const std::vector<Design>& designs, std::size_t k_spaces);

/// t-spaces x k-spaces containment matrix.
ExactMatrix inclusion_matrix(const DesignSpace& space);

Rational kappa_formula(const Integer& n_designs, const ParamSet& params);
/// Zero for i >= t.
Rational kappa_i_formula(const Integer& n_designs, unsigned i, const ParamSet& params);
/// #{Y in B : Y != X, X cap Y = I} for a block X and an i-subspace I of X.
Rational intersect_count(const ParamSet& params, unsigned i);

struct GramCoefficients {
    Integer n_designs;
    Rational kappa;
    std::vector<Rational> kappa_i;  // indices 0..k, zero from t on
};

GramCoefficients gram_coefficients_formula(const Integer& n_designs, const ParamSet& params);

/// kappa from the diagonal and kappa_i from the entries in relation k-i of
/// UU^T. `constant` reports whether every class was constant.
struct EmpiricalGram {
    Rational kappa;
    std::vector<Rational> kappa_i;  // indices 0..k
    bool constant = false;
};
EmpiricalGram empirical_gram(const ExactMatrix& gram, const SchemeInstance& scheme);

/// UU^T == kappa I + sum_{i<=t} kappa_i A_{k-i} entrywise.
bool gram_check(const ExactMatrix& gram, const GramCoefficients& coeffs, const SchemeInstance& scheme);
bool gram_check_from_incidence(const ExactMatrix& u, const GramCoefficients& coeffs,
                               const SchemeInstance& scheme);

/// Closed form of the r-th eigenvalue of UU^T, 0 <= r <= k.
Rational mu_eigenvalue(const ParamSet& params, unsigned r, const Rational& kappa);
/// kappa + sum_i kappa_i nu_r^{(k-i)}.
Rational mu_from_scheme(const ParamSet& params, unsigned r, const GramCoefficients& coeffs);

Integer dimension_formula(const ParamSet& params);

/// Per-design check of intersect_count: for every block X and every
/// i-subspace I of X (i < t), the number of other blocks meeting X exactly in
/// I. Returns the distinct observed values per i.
struct IntersectObservation {
    unsigned i = 0;
    Rational expected;
    std::vector<std::uint64_t> observed;  // sorted distinct values
    bool ok = false;
};
std::vector<IntersectObservation> observe_intersections(const Design& design, const DesignSpace& space);

struct RankCertificate {
    std::size_t designs = 0;
    std::size_t k_spaces = 0;
    std::size_t t_spaces = 0;
    std::size_t rank_inclusion = 0;     // rank W
    std::size_t rank_differences = 0;   // rank of rows W_i - W_0
    bool covers_all_ones = false;       // W chi = lambda 1 for every design
    bool differences_annihilate = false;  // (W_i - W_0) U = 0
    std::size_t upper_bound = 0;        // [n k] - rank of the differences
    std::size_t lower_bound = 0;        // rank U
    std::string lower_bound_method;     // "rank(U)" or "rank(U U^T)" when U is wide
    Integer dimension;                  // [n k] - [n t] + 1
    bool meets = false;
};

RankCertificate rank_certificate(const DesignSpace& space, const std::vector<Design>& designs);

/// Same, reusing precomputed pieces; `w` is inclusion_matrix(space).
RankCertificate rank_certificate(const DesignSpace& space, const std::vector<Design>& designs,
                                 const ExactMatrix& w, std::size_t rank_w, std::size_t rank_diff);

} // namespace qsteiner
