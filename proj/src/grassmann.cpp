#include "qsteiner/grassmann.hpp"

#include "qsteiner/error.hpp"

#include <algorithm>

namespace qsteiner {

SchemeInstance::SchemeInstance(unsigned n, unsigned k, std::shared_ptr<const FieldSpec> field,
                               std::size_t max_size)
    : grass_(std::make_shared<const Grassmannian>(n, k, std::move(field), max_size))
{
    build_relations();
}

SchemeInstance::SchemeInstance(std::shared_ptr<const Grassmannian> grassmannian)
    : grass_(std::move(grassmannian))
{
    build_relations();
}

void SchemeInstance::build_relations()
{
    const std::size_t m = grass_->size();
    const unsigned k = grass_->k();
    const FieldSpec& f = grass_->field();
    relation_.assign(m * m, 0);
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = x + 1; y < m; ++y) {
            auto rel = static_cast<std::uint8_t>(k - intersection_dim((*grass_)[x], (*grass_)[y], f));
            relation_[x * m + y] = rel;
            relation_[y * m + x] = rel;
        }
    cache_.resize(k + 1);
}

const ExactMatrix& SchemeInstance::adjacency(unsigned i) const
{
    if (i > k())
        throw InvalidArgument("adjacency: relation index " + std::to_string(i) + " exceeds k = " +
                              std::to_string(k()));
    std::lock_guard lock(mutex_);
    if (!cache_[i]) {
        const std::size_t m = size();
        auto a = std::make_unique<ExactMatrix>(m, m);
        for (std::size_t x = 0; x < m; ++x)
            for (std::size_t y = 0; y < m; ++y)
                if (relation_[x * m + y] == i)
                    (*a)(x, y) = 1;
        cache_[i] = std::move(a);
    }
    return *cache_[i];
}

const ExactMatrix& adjacency_matrix(const SchemeInstance& s, unsigned i)
{
    return s.adjacency(i);
}

namespace {

long sign(long e) { return (e % 2 == 0) ? 1 : -1; }

} // namespace

Rational eberlein_eigenvalue(long n, long k, unsigned long q, long i, long x)
{
    Rational sum(0);
    for (long j = 0; j <= i; ++j)
        sum += sign(j) * gauss_binom(x, j, q) * gauss_binom(k - x, i - j, q) *
               gauss_binom(n - k - x, i - j, q) * q_power(q, binom2(j) + (i - j) * (i - j + x));
    return sum;
}

Rational eisfeld_eigenvalue(long n, long k, unsigned long q, long i, long r)
{
    Rational sum(0);
    for (long j = std::max(0L, r - i); j <= std::min(r, k - i); ++j)
        sum += sign(r - j) * gauss_binom(r, j, q) * gauss_binom(n - k + j - r, n - k - i, q) *
               gauss_binom(k - j, i, q) * q_power(q, i * (i + j - r) + binom2(r - j));
    return sum;
}

Integer eigenspace_multiplicity(long n, long r, unsigned long q)
{
    Rational m = gauss_binom(n, r, q) - gauss_binom(n, r - 1, q);
    if (m.get_den() != 1)
        throw Error("eigenspace_multiplicity: non-integral value");
    return m.get_num();
}

std::vector<EigenGroup> grouped_rank_check(const ExactMatrix& m, const std::vector<Rational>& values,
                                           const std::vector<Integer>& multiplicities)
{
    if (values.size() != multiplicities.size())
        throw DimensionMismatch("grouped_rank_check: values and multiplicities differ in length");
    std::vector<EigenGroup> groups;
    for (unsigned r = 0; r < values.size(); ++r) {
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const EigenGroup& g) { return g.value == values[r]; });
        if (it == groups.end()) {
            groups.push_back(EigenGroup{values[r], {r}, multiplicities[r], 0, 0, false});
        } else {
            it->members.push_back(r);
            it->multiplicity += multiplicities[r];
        }
    }
    for (auto& g : groups) {
        Integer expected = Integer(static_cast<unsigned long>(m.rows())) - g.multiplicity;
        if (expected < 0)
            throw Error("grouped_rank_check: multiplicity exceeds the matrix size");
        g.expected_rank = expected.get_ui();
        g.rank = rank_exact(m.shifted(g.value));
        g.ok = (g.rank == g.expected_rank);
    }
    return groups;
}

SpectrumReport verify_spectrum(const SchemeInstance& s)
{
    const long n = s.n(), k = s.k();
    const unsigned long q = s.q();
    const std::size_t m = s.size();
    const long rmax = std::min(k, n - k);

    SpectrumReport rep;
    rep.n = s.n();
    rep.k = s.k();
    rep.q = s.q();
    rep.size = m;

    std::vector<Integer> mults;
    for (long r = 0; r <= rmax; ++r)
        mults.push_back(eigenspace_multiplicity(n, r, q));
    rep.multiplicity_sum = 0;
    for (const auto& x : mults)
        rep.multiplicity_sum += x;
    rep.multiplicity_sum_ok = (rep.multiplicity_sum == static_cast<unsigned long>(m));

    rep.partition_ok = true;
    for (std::size_t x = 0; x < m && rep.partition_ok; ++x)
        if (s.relation(x, x) != 0)
            rep.partition_ok = false;
    for (std::size_t x = 0; x < m && rep.partition_ok; ++x)
        for (std::size_t y = 0; y < m; ++y)
            if (x != y && s.relation(x, y) == 0) {
                rep.partition_ok = false;
                break;
            }

    bool all_ok = rep.multiplicity_sum_ok && rep.partition_ok;
    for (unsigned i = 0; i <= s.k(); ++i) {
        const ExactMatrix& a = s.adjacency(i);
        RelationSpectrum rs;
        rs.i = i;
        rs.formulas_agree = true;
        std::vector<Rational> values;
        for (long r = 0; r <= rmax; ++r) {
            EigenvalueEntry e{static_cast<unsigned>(r), eberlein_eigenvalue(n, k, q, i, r),
                              eisfeld_eigenvalue(n, k, q, i, r), mults[r]};
            if (e.eberlein != e.eisfeld)
                rs.formulas_agree = false;
            values.push_back(e.eberlein);
            rs.trace += Rational(e.multiplicity) * e.eberlein;
            rs.eigenvalues.push_back(std::move(e));
        }

        rs.symmetric = (a == a.transpose());
        rs.row_sum_ok = true;
        for (std::size_t x = 0; x < m; ++x) {
            Rational sum(0);
            for (const auto& v : a.row(x))
                sum += v;
            if (sum != values[0])
                rs.row_sum_ok = false;
        }

        rs.groups = grouped_rank_check(a, values, mults);
        bool groups_ok = std::all_of(rs.groups.begin(), rs.groups.end(),
                                     [](const EigenGroup& g) { return g.ok; });
        // Off the identity relation the adjacency matrix has zero diagonal.
        bool trace_ok = (i == 0) ? (rs.trace == static_cast<unsigned long>(m)) : (sgn(rs.trace) == 0);
        rs.ok = rs.formulas_agree && rs.symmetric && rs.row_sum_ok && groups_ok && trace_ok;
        all_ok = all_ok && rs.ok;
        rep.relations.push_back(std::move(rs));
    }
    rep.ok = all_ok;
    return rep;
}

ClosureReport check_closure(const SchemeInstance& s)
{
    const unsigned k = s.k();
    const std::size_t m = s.size();
    ClosureReport rep;
    rep.ok = true;
    rep.constants.assign(k + 1, std::vector<std::vector<Integer>>(k + 1, std::vector<Integer>(k + 1, 0)));
    for (unsigned i = 0; i <= k; ++i)
        for (unsigned j = 0; j <= k; ++j) {
            ExactMatrix prod = mat_mul(s.adjacency(i), s.adjacency(j));
            std::vector<bool> seen(k + 1, false);
            for (std::size_t x = 0; x < m; ++x)
                for (std::size_t y = 0; y < m; ++y) {
                    const Rational& v = prod(x, y);
                    unsigned l = s.relation(x, y);
                    if (v.get_den() != 1) {
                        rep.ok = false;
                        continue;
                    }
                    if (!seen[l]) {
                        rep.constants[i][j][l] = v.get_num();
                        seen[l] = true;
                    } else if (rep.constants[i][j][l] != v.get_num()) {
                        rep.ok = false;
                    }
                }
        }
    return rep;
}

} // namespace qsteiner
