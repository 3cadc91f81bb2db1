#pragma once

// The Grassmann association scheme on Gr_{n,k}(F_q): relations by
// intersection dimension, adjacency matrices, the two eigenvalue formulas and
// exact spectrum verification through ranks of shifted matrices.

#include "qsteiner/gfspaces.hpp"
#include "qsteiner/linalg.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

namespace qsteiner {

class SchemeInstance {
public:
    /// Throws GuardExceeded when [n k]_q > max_size.
    SchemeInstance(unsigned n, unsigned k, std::shared_ptr<const FieldSpec> field,
                   std::size_t max_size = 2000);
    /// Reuses an existing enumeration of Gr_{n,k}.
    explicit SchemeInstance(std::shared_ptr<const Grassmannian> grassmannian);

    unsigned n() const { return grass_->n(); }
    unsigned k() const { return grass_->k(); }
    unsigned q() const { return grass_->field().q(); }
    std::size_t size() const { return grass_->size(); }
    const Grassmannian& grassmannian() const { return *grass_; }

    /// i such that dim(X cap Y) = k - i.
    unsigned relation(std::size_t x, std::size_t y) const { return relation_[x * size() + y]; }

    /// 0/1 matrix of relation i; built on first use and cached.
    const ExactMatrix& adjacency(unsigned i) const;

private:
    void build_relations();

    std::shared_ptr<const Grassmannian> grass_;
    std::vector<std::uint8_t> relation_;
    mutable std::mutex mutex_;
    mutable std::vector<std::unique_ptr<ExactMatrix>> cache_;
};

/// Throws InvalidArgument for i > k.
const ExactMatrix& adjacency_matrix(const SchemeInstance& s, unsigned i);

/// E_i(n,k;q;x), the generalized Eberlein polynomial.
Rational eberlein_eigenvalue(long n, long k, unsigned long q, long i, long x);

/// The eigenvalue of A_i on the r-th common eigenspace as a sum over
/// max(0,r-i) <= j <= min(r,k-i).
Rational eisfeld_eigenvalue(long n, long k, unsigned long q, long i, long r);

/// [n r]_q - [n r-1]_q.
Integer eigenspace_multiplicity(long n, long r, unsigned long q);

/// One group of exactly equal predicted eigenvalues of a symmetric matrix M.
struct EigenGroup {
    Rational value;
    std::vector<unsigned> members;  // eigenspace indices r sharing the value
    Integer multiplicity;           // sum of their multiplicities
    std::size_t expected_rank = 0;  // size - multiplicity
    std::size_t rank = 0;           // rank_exact(M - value I)
    bool ok = false;
};

/// Groups `values` (indexed by r) by exact equality and checks
/// rank(M - value I) = size - grouped multiplicity for each group.
std::vector<EigenGroup> grouped_rank_check(const ExactMatrix& m, const std::vector<Rational>& values,
                                           const std::vector<Integer>& multiplicities);

struct EigenvalueEntry {
    unsigned r = 0;
    Rational eberlein;
    Rational eisfeld;
    Integer multiplicity;
};

struct RelationSpectrum {
    unsigned i = 0;
    std::vector<EigenvalueEntry> eigenvalues;
    std::vector<EigenGroup> groups;
    Rational trace;            // sum_r mult_r * nu_r
    bool formulas_agree = false;
    bool row_sum_ok = false;   // every row sum equals nu_0
    bool symmetric = false;
    bool ok = false;
};

struct SpectrumReport {
    unsigned n = 0, k = 0, q = 0;
    std::size_t size = 0;
    Integer multiplicity_sum;
    bool multiplicity_sum_ok = false;
    bool partition_ok = false;  // A_0 = I and sum_i A_i = J
    std::vector<RelationSpectrum> relations;
    bool ok = false;
};

SpectrumReport verify_spectrum(const SchemeInstance& s);

/// Structure constants p_{ij}^l with A_i A_j = sum_l p_{ij}^l A_l, read off
/// the product and checked to be constant on every relation class.
struct ClosureReport {
    /// constants[i][j][l]
    std::vector<std::vector<std::vector<Integer>>> constants;
    bool ok = false;
};
ClosureReport check_closure(const SchemeInstance& s);

} // namespace qsteiner
