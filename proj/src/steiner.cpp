#include "qsteiner/steiner.hpp"

#include "qsteiner/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace qsteiner {

namespace {

Integer as_integer(const Rational& r, const char* what)
{
    if (r.get_den() != 1)
        throw Error(std::string(what) + ": expected an integer, got " + to_string(r));
    return r.get_num();
}

long sign(long e) { return (e % 2 == 0) ? 1 : -1; }

} // namespace

ParamSet::ParamSet(unsigned t, unsigned k, unsigned n, unsigned long q) : t_(t), k_(k), n_(n), q_(q)
{
    require_prime_power(q);
    if (!(1 <= t && t <= k && k <= n))
        throw InvalidArgument("parameters must satisfy 1 <= t <= k <= n, got " + label());
}

std::string ParamSet::label() const
{
    return "(t,k,n,q)=(" + std::to_string(t_) + "," + std::to_string(k_) + "," + std::to_string(n_) +
           "," + std::to_string(q_) + ")";
}

std::string ParamSet::inadmissibility_reason(unsigned long lambda) const
{
    for (unsigned i = 0; i <= t_; ++i) {
        Integer num = as_integer(gauss_binom(n_ - i, t_ - i, q_), "admissible") * lambda;
        Integer den = as_integer(gauss_binom(k_ - i, t_ - i, q_), "admissible");
        if (num % den != 0)
            return "[" + std::to_string(k_ - i) + " " + std::to_string(t_ - i) + "]_q = " + den.get_str() +
                   " does not divide " + (lambda == 1 ? "" : std::to_string(lambda) + " * ") + "[" +
                   std::to_string(n_ - i) + " " + std::to_string(t_ - i) + "]_q = " +
                   as_integer(gauss_binom(n_ - i, t_ - i, q_), "admissible").get_str();
    }
    return {};
}

bool ParamSet::admissible(unsigned long lambda) const
{
    return inadmissibility_reason(lambda).empty();
}

Rational ParamSet::lambda_i(unsigned i, unsigned long lambda) const
{
    if (i > t_)
        throw InvalidArgument("lambda_i: i exceeds t");
    return Rational(Integer(lambda)) * gauss_binom(n_ - i, t_ - i, q_) / gauss_binom(k_ - i, t_ - i, q_);
}

Rational ParamSet::block_count() const
{
    return gauss_binom(n_, t_, q_) / gauss_binom(k_, t_, q_);
}

Rational lambda_i(const ParamSet& params, unsigned i, unsigned long lambda)
{
    return params.lambda_i(i, lambda);
}

DesignSpace::DesignSpace(const ParamSet& params, std::size_t max_k_spaces, std::size_t max_t_spaces)
    : params_(params), field_(params.field())
{
    if (gauss_binom(params.n(), params.t(), params.q()) > Rational(static_cast<double>(max_t_spaces)))
        throw GuardExceeded("design space: [n t]_q exceeds " + std::to_string(max_t_spaces) + " for " +
                            params.label());
    k_spaces_ = std::make_shared<const Grassmannian>(params.n(), params.k(), field_, max_k_spaces);
    t_spaces_ = std::make_shared<const Grassmannian>(params.n(), params.t(), field_, max_t_spaces);
    contained_.resize(k_spaces_->size());
    for (std::size_t b = 0; b < k_spaces_->size(); ++b) {
        for (const Subspace& s : subspaces_of((*k_spaces_)[b], params.t(), *field_)) {
            auto idx = t_spaces_->index_of(s);
            if (!idx)
                throw Error("design space: t-subspace missing from the enumeration");
            contained_[b].push_back(static_cast<std::uint32_t>(*idx));
        }
        std::sort(contained_[b].begin(), contained_[b].end());
    }
}

namespace {

// Encodes RREF bases either as a packed base-q integer or as raw bytes.
struct PackedCodec {
    unsigned q, rows, cols;
    std::uint64_t encode(std::span<const Elem> basis) const
    {
        std::uint64_t v = 0;
        for (Elem e : basis)
            v = v * q + e;
        return v;
    }
    Subspace decode(std::uint64_t v) const
    {
        Subspace s{cols, rows, std::vector<Elem>(static_cast<std::size_t>(rows) * cols, 0), Subspace::npos};
        for (std::size_t i = s.basis.size(); i-- > 0;) {
            s.basis[i] = static_cast<Elem>(v % q);
            v /= q;
        }
        return s;
    }
};

struct BytesCodec {
    unsigned rows, cols;
    std::string encode(std::span<const Elem> basis) const { return std::string(basis.begin(), basis.end()); }
    Subspace decode(const std::string& v) const
    {
        return Subspace{cols, rows, std::vector<Elem>(v.begin(), v.end()), Subspace::npos};
    }
};

template <typename Codec>
DesignVerdict coverage_check(const std::vector<Subspace>& blocks, const ParamSet& params,
                             unsigned long lambda, const FieldSpec& field, const Codec& codec)
{
    using Key = decltype(codec.encode(std::span<const Elem>{}));
    const unsigned n = params.n(), k = params.k(), t = params.t();

    // Coefficient matrices of the t-subspaces of F_q^k, applied to each block.
    const std::vector<Subspace> local = enumerate_subspaces(k, t, field);
    std::vector<Key> keys;
    keys.reserve(blocks.size() * local.size());
    std::vector<Elem> rows(static_cast<std::size_t>(t) * n);
    for (const Subspace& block : blocks) {
        for (const Subspace& coeffs : local) {
            std::fill(rows.begin(), rows.end(), Elem{0});
            for (unsigned r = 0; r < t; ++r)
                for (unsigned i = 0; i < k; ++i) {
                    Elem c = coeffs.at(r, i);
                    if (c == 0)
                        continue;
                    for (unsigned col = 0; col < n; ++col)
                        rows[r * n + col] = field.add(rows[r * n + col], field.mul(c, block.at(i, col)));
                }
            rref_in_place(rows, t, n, field);
            keys.push_back(codec.encode(rows));
        }
    }
    std::sort(keys.begin(), keys.end());

    DesignVerdict verdict;
    std::uint64_t distinct = 0;
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i])
            ++j;
        ++distinct;
        if (j - i != lambda) {
            verdict.ok = false;
            verdict.witness = codec.decode(keys[i]);
            verdict.witness_coverage = j - i;
            verdict.message = "a t-subspace lies in " + std::to_string(j - i) + " blocks instead of " +
                              std::to_string(lambda);
            return verdict;
        }
        i = j;
    }
    Integer total = as_integer(gauss_binom(n, t, params.q()), "verify_design");
    if (Integer(static_cast<unsigned long>(distinct)) == total) {
        verdict.ok = true;
        verdict.message = "every t-subspace lies in exactly " + std::to_string(lambda) + " blocks";
        return verdict;
    }
    // Some t-subspace is uncovered; the first one in canonical order is the witness.
    for_each_subspace(n, t, field, [&](const Subspace& s) {
        if (std::binary_search(keys.begin(), keys.end(), codec.encode(s.basis)))
            return true;
        verdict.witness = s;
        return false;
    });
    verdict.ok = false;
    verdict.witness_coverage = 0;
    verdict.message = "a t-subspace lies in no block (" + std::to_string(distinct) + " of " +
                      total.get_str() + " t-subspaces covered)";
    return verdict;
}

} // namespace

DesignVerdict verify_design(const std::vector<Subspace>& blocks, const ParamSet& params,
                            unsigned long lambda, std::uint64_t max_incidences)
{
    auto field = params.field();
    for (const Subspace& b : blocks) {
        if (b.ambient_n != params.n() || b.dim != params.k() ||
            b.basis.size() != static_cast<std::size_t>(b.dim) * b.ambient_n)
            throw InvalidArgument("verify_design: block of dimension " + std::to_string(b.dim) + " in F_q^" +
                                  std::to_string(b.ambient_n) + " does not match " + params.label());
        Subspace canon = span_of(b.basis, b.dim, b.ambient_n, *field);
        if (!(canon == b))
            throw InvalidArgument("verify_design: block is not in reduced row echelon form");
    }
    Rational per_block = gauss_binom(params.k(), params.t(), params.q());
    Rational incidences = per_block * Rational(static_cast<double>(blocks.size()));
    if (incidences > Rational(static_cast<double>(max_incidences)))
        throw GuardExceeded("verify_design: " + to_string(incidences) + " block/t-subspace incidences exceed " +
                            std::to_string(max_incidences));

    // Packed keys when q^{t n} fits in 63 bits.
    double bits = static_cast<double>(params.t()) * params.n() * std::log2(static_cast<double>(params.q()));
    if (bits <= 63.0)
        return coverage_check(blocks, params, lambda, *field,
                              PackedCodec{static_cast<unsigned>(params.q()), params.t(), params.n()});
    return coverage_check(blocks, params, lambda, *field, BytesCodec{params.t(), params.n()});
}

DesignVerdict verify_design(const Design& design, const DesignSpace& space, unsigned long lambda)
{
    std::vector<std::uint64_t> coverage(space.points().size(), 0);
    for (std::size_t b : design.blocks) {
        if (b >= space.blocks().size())
            throw InvalidArgument("verify_design: block index out of range");
        for (std::uint32_t p : space.contained(b))
            ++coverage[p];
    }
    DesignVerdict verdict;
    for (std::size_t p = 0; p < coverage.size(); ++p) {
        if (coverage[p] != lambda) {
            verdict.witness = space.points()[p];
            verdict.witness_coverage = coverage[p];
            verdict.message = "t-subspace #" + std::to_string(p) + " lies in " + std::to_string(coverage[p]) +
                              " blocks instead of " + std::to_string(lambda);
            return verdict;
        }
    }
    verdict.ok = true;
    verdict.message = "every t-subspace lies in exactly " + std::to_string(lambda) + " blocks";
    return verdict;
}

std::vector<Subspace> design_subspaces(const Design& design, const DesignSpace& space)
{
    std::vector<Subspace> out;
    for (std::size_t b : design.blocks)
        out.push_back(space.blocks()[b]);
    return out;
}

namespace {

using Cover = std::bitset<256>;

class ExactCover {
public:
    explicit ExactCover(const DesignSpace& space)
        : universe_(space.points().size()), sets_(space.blocks().size()), by_element_(universe_)
    {
        if (universe_ > 256)
            throw GuardExceeded("exact cover: more than 256 t-subspaces");
        for (std::size_t b = 0; b < sets_.size(); ++b)
            for (std::uint32_t p : space.contained(b)) {
                sets_[b].set(p);
                by_element_[p].push_back(static_cast<std::uint32_t>(b));
            }
        full_.reset();
        for (std::size_t p = 0; p < universe_; ++p)
            full_.set(p);
    }

    bool complete(const Cover& covered) const { return covered == full_; }

    // Uncovered element with the fewest compatible sets (lowest index on
    // ties) and those sets in ascending order.
    std::vector<std::uint32_t> branch(const Cover& covered) const
    {
        std::vector<std::uint32_t> best;
        bool have = false;
        std::vector<std::uint32_t> cand;
        for (std::size_t e = 0; e < universe_; ++e) {
            if (covered.test(e))
                continue;
            cand.clear();
            for (std::uint32_t b : by_element_[e])
                if ((sets_[b] & covered).none())
                    cand.push_back(b);
            if (!have || cand.size() < best.size()) {
                best = cand;
                have = true;
                if (best.empty())
                    break;
            }
        }
        return best;
    }

    const Cover& set(std::size_t b) const { return sets_[b]; }

private:
    std::size_t universe_;
    std::vector<Cover> sets_;
    std::vector<std::vector<std::uint32_t>> by_element_;
    Cover full_;
};

void enumerate_rec(const ExactCover& ec, Cover covered, std::vector<std::size_t>& chosen,
                   std::vector<Design>& out, std::size_t max_designs)
{
    if (ec.complete(covered)) {
        if (out.size() >= max_designs)
            throw GuardExceeded("enumerate_steiner: more than " + std::to_string(max_designs) + " systems");
        Design d{chosen};
        std::sort(d.blocks.begin(), d.blocks.end());
        out.push_back(std::move(d));
        return;
    }
    for (std::uint32_t b : ec.branch(covered)) {
        chosen.push_back(b);
        enumerate_rec(ec, covered | ec.set(b), chosen, out, max_designs);
        chosen.pop_back();
    }
}

// Uniform index in [0, n) by rejection, independent of the standard library's
// distribution implementations.
std::size_t draw_index(std::mt19937_64& rng, std::size_t n)
{
    const std::uint64_t range = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range);
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return static_cast<std::size_t>(v % range);
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng)
{
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[draw_index(rng, i)]);
}

bool sample_rec(const ExactCover& ec, Cover covered, std::vector<std::size_t>& chosen, std::mt19937_64& rng,
                std::uint64_t& nodes, std::uint64_t limit)
{
    if (ec.complete(covered))
        return true;
    if (nodes >= limit)
        return false;
    ++nodes;
    auto cand = ec.branch(covered);
    shuffle(cand, rng);
    for (std::uint32_t b : cand) {
        chosen.push_back(b);
        if (sample_rec(ec, covered | ec.set(b), chosen, rng, nodes, limit))
            return true;
        chosen.pop_back();
        if (nodes >= limit)
            return false;
    }
    return false;
}

void require_search_guards(const DesignSpace& space)
{
    if (space.points().size() > 200 || space.blocks().size() > 2000)
        throw GuardExceeded("exact-cover search requires [n t]_q <= 200 and [n k]_q <= 2000 for " +
                            space.params().label());
}

} // namespace

std::vector<Design> enumerate_steiner(const DesignSpace& space, std::size_t max_designs)
{
    require_search_guards(space);
    if (!space.params().admissible())
        return {};
    ExactCover ec(space);
    std::vector<Design> out;
    std::vector<std::size_t> chosen;
    enumerate_rec(ec, Cover{}, chosen, out, max_designs);
    std::sort(out.begin(), out.end());
    return out;
}

SampleResult sample_steiner(const DesignSpace& space, std::uint64_t seed, std::size_t count,
                            std::uint64_t node_budget)
{
    require_search_guards(space);
    if (!space.params().admissible())
        throw InvalidArgument("sample_steiner: inadmissible parameters " + space.params().label());
    SampleResult result;
    if (count == 0)
        return result;
    ExactCover ec(space);
    std::mt19937_64 rng(seed);
    std::set<Design> seen;
    // Each descent gets a bounded share of the budget, then restarts.
    const std::uint64_t per_attempt = 100'000;
    while (result.designs.size() < count) {
        if (result.nodes >= node_budget) {
            result.partial = true;
            break;
        }
        std::vector<std::size_t> chosen;
        std::uint64_t limit = std::min(node_budget, result.nodes + per_attempt);
        if (!sample_rec(ec, Cover{}, chosen, rng, result.nodes, limit))
            continue;
        Design d{chosen};
        std::sort(d.blocks.begin(), d.blocks.end());
        if (seen.insert(d).second)
            result.designs.push_back(std::move(d));
    }
    return result;
}

ExactMatrix incidence_matrix(const std::vector<Design>& designs, std::size_t k_spaces)
{
    ExactMatrix u(k_spaces, designs.size());
    for (std::size_t c = 0; c < designs.size(); ++c)
        for (std::size_t b : designs[c].blocks) {
            if (b >= k_spaces)
                throw InvalidArgument("incidence_matrix: block index outside Gr_{n,k}");
            u(b, c) = 1;
        }
    return u;
}

ExactMatrix inclusion_matrix(const DesignSpace& space)
{
    ExactMatrix w(space.points().size(), space.blocks().size());
    for (std::size_t b = 0; b < space.blocks().size(); ++b)
        for (std::uint32_t p : space.contained(b))
            w(p, b) = 1;
    return w;
}

Rational kappa_formula(const Integer& n_designs, const ParamSet& p)
{
    const long n = p.n(), k = p.k(), t = p.t();
    const unsigned long q = p.q();
    return Rational(n_designs) * gauss_binom(n, t, q) / (gauss_binom(n, k, q) * gauss_binom(k, t, q));
}

Rational intersect_count(const ParamSet& p, unsigned i_)
{
    const long n = p.n(), k = p.k(), t = p.t(), i = i_;
    const unsigned long q = p.q();
    if (i >= t)
        throw InvalidArgument("intersect_count: need i <= t-1");
    Rational sum(0);
    for (long j = i; j <= t; ++j)
        sum += gauss_binom(k - i, j - i, q) * gauss_binom(n - j, k - j, q) * sign(j - i) *
               q_power(q, binom2(j - i));
    return sum / gauss_binom(n - t, k - t, q) +
           sign(t + 1 - i) * gauss_binom(k - i - 1, t - i, q) * q_power(q, binom2(t + 1 - i));
}

Rational kappa_i_formula(const Integer& n_designs, unsigned i_, const ParamSet& p)
{
    const long n = p.n(), k = p.k(), t = p.t(), i = i_;
    const unsigned long q = p.q();
    if (i >= t)
        return Rational(0);
    Rational den = gauss_binom(n - t, k - t, q) * gauss_binom(n - k, k - i, q) * q_power(q, (k - i) * (k - i));
    if (sgn(den) == 0)
        throw VanishingDenominator("kappa_i: [n-k k-i] vanishes for " + p.label());
    return Rational(n_designs) / den * intersect_count(p, i_);
}

GramCoefficients gram_coefficients_formula(const Integer& n_designs, const ParamSet& params)
{
    GramCoefficients g;
    g.n_designs = n_designs;
    g.kappa = kappa_formula(n_designs, params);
    for (unsigned i = 0; i <= params.k(); ++i)
        g.kappa_i.push_back(kappa_i_formula(n_designs, i, params));
    return g;
}

EmpiricalGram empirical_gram(const ExactMatrix& gram, const SchemeInstance& scheme)
{
    const std::size_t m = scheme.size();
    const unsigned k = scheme.k();
    if (gram.rows() != m || gram.cols() != m)
        throw DimensionMismatch("empirical_gram: Gram matrix does not match the scheme");
    EmpiricalGram e;
    e.constant = true;
    e.kappa_i.assign(k + 1, Rational(0));
    std::vector<bool> seen(k + 1, false);
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) {
            const Rational& v = gram(x, y);
            if (x == y) {
                if (x == 0)
                    e.kappa = v;
                else if (v != e.kappa)
                    e.constant = false;
                continue;
            }
            unsigned dim = k - scheme.relation(x, y);
            if (!seen[dim]) {
                e.kappa_i[dim] = v;
                seen[dim] = true;
            } else if (e.kappa_i[dim] != v) {
                e.constant = false;
            }
        }
    return e;
}

bool gram_check(const ExactMatrix& gram, const GramCoefficients& coeffs, const SchemeInstance& scheme)
{
    const std::size_t m = scheme.size();
    const unsigned k = scheme.k();
    if (gram.rows() != m || gram.cols() != m)
        throw DimensionMismatch("gram_check: Gram matrix does not match the scheme");
    if (coeffs.kappa_i.size() != k + 1)
        throw DimensionMismatch("gram_check: expected kappa_0..kappa_k");
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) {
            Rational expected = (x == y) ? coeffs.kappa : Rational(0);
            // A_{k-i} holds the pairs meeting in dimension i.
            unsigned dim = k - scheme.relation(x, y);
            expected += coeffs.kappa_i[dim];
            if (gram(x, y) != expected)
                return false;
        }
    return true;
}

bool gram_check_from_incidence(const ExactMatrix& u, const GramCoefficients& coeffs,
                               const SchemeInstance& scheme)
{
    return gram_check(mat_mul(u, u.transpose()), coeffs, scheme);
}

Rational mu_eigenvalue(const ParamSet& p, unsigned r_, const Rational& kappa)
{
    const long n = p.n(), k = p.k(), t = p.t(), r = r_;
    const unsigned long q = p.q();
    if (r > k)
        throw InvalidArgument("mu_eigenvalue: need r <= k");
    if (r == 0) {
        Rational sum(0);
        for (long i = 0; i < t; ++i) {
            Rational den = gauss_binom(k - 1, i, q);
            if (sgn(den) == 0)
                throw VanishingDenominator("mu_0: [k-1 i] vanishes");
            sum += q_power(q, n - i) * gauss_binom(n, i, q) / den;
        }
        return kappa * (1 - q_int(k - n, q) / q_int(k, q) * sum);
    }
    Rational den = gauss_binom(n - k - 1, r - 1, q);
    if (sgn(den) == 0)
        throw VanishingDenominator("mu_r: [n-k-1 r-1] vanishes for r = " + std::to_string(r));
    Rational sum(0);
    for (long i = 0; i < t; ++i)
        sum += sign(i) * q_power(q, binom2(i)) * gauss_binom(k - i - 1, r - i - 1, q) * gauss_binom(n - r, i, q);
    return kappa * (1 + sign(r) * q_power(q, binom2(r) - k * r + k) / den * sum);
}

Rational mu_from_scheme(const ParamSet& p, unsigned r, const GramCoefficients& coeffs)
{
    Rational mu = coeffs.kappa;
    for (unsigned i = 0; i <= p.t() && i < coeffs.kappa_i.size(); ++i)
        mu += coeffs.kappa_i[i] * eberlein_eigenvalue(p.n(), p.k(), p.q(), p.k() - i, r);
    return mu;
}

Integer dimension_formula(const ParamSet& p)
{
    return as_integer(gauss_binom(p.n(), p.k(), p.q()) - gauss_binom(p.n(), p.t(), p.q()) + 1,
                      "dimension_formula");
}

std::vector<IntersectObservation> observe_intersections(const Design& design, const DesignSpace& space)
{
    const ParamSet& p = space.params();
    const FieldSpec& f = space.field();
    std::vector<IntersectObservation> out;
    for (unsigned i = 0; i < p.t(); ++i)
        out.push_back(IntersectObservation{i, intersect_count(p, i), {}, true});
    for (std::size_t x : design.blocks) {
        const Subspace& bx = space.blocks()[x];
        std::map<std::string, std::uint64_t> meets;
        for (std::size_t y : design.blocks)
            if (y != x)
                ++meets[intersection(bx, space.blocks()[y], f).key()];
        for (unsigned i = 0; i < p.t(); ++i) {
            auto& obs = out[i];
            for (const Subspace& sub : subspaces_of(bx, i, f)) {
                auto it = meets.find(sub.key());
                std::uint64_t c = (it == meets.end()) ? 0 : it->second;
                if (std::find(obs.observed.begin(), obs.observed.end(), c) == obs.observed.end())
                    obs.observed.push_back(c);
            }
        }
    }
    for (auto& obs : out) {
        std::sort(obs.observed.begin(), obs.observed.end());
        obs.ok = obs.observed.size() == 1 && obs.expected == Rational(static_cast<unsigned long>(obs.observed[0]));
    }
    return out;
}

RankCertificate rank_certificate(const DesignSpace& space, const std::vector<Design>& designs)
{
    ExactMatrix w = inclusion_matrix(space);
    std::size_t rank_w = rank_exact(w);
    ExactMatrix d(w.rows() - 1, w.cols());
    for (std::size_t r = 1; r < w.rows(); ++r)
        for (std::size_t c = 0; c < w.cols(); ++c)
            d(r - 1, c) = w(r, c) - w(0, c);
    return rank_certificate(space, designs, w, rank_w, rank_exact(d));
}

RankCertificate rank_certificate(const DesignSpace& space, const std::vector<Design>& designs,
                                 const ExactMatrix& w, std::size_t rank_w, std::size_t rank_diff)
{
    RankCertificate c;
    c.designs = designs.size();
    c.k_spaces = space.blocks().size();
    c.t_spaces = space.points().size();
    c.rank_inclusion = rank_w;
    c.rank_differences = rank_diff;
    c.dimension = dimension_formula(space.params());
    c.upper_bound = c.k_spaces - rank_diff;

    ExactMatrix u = incidence_matrix(designs, c.k_spaces);
    ExactMatrix wu = mat_mul(w, u);
    c.covers_all_ones = std::all_of(wu.entries().begin(), wu.entries().end(),
                                    [](const Rational& v) { return v == 1; });
    // (W_i - W_0) U = 0 is the statement that every column of WU is constant.
    c.differences_annihilate = true;
    for (std::size_t col = 0; col < wu.cols() && c.differences_annihilate; ++col)
        for (std::size_t r = 1; r < wu.rows(); ++r)
            if (wu(r, col) != wu(0, col)) {
                c.differences_annihilate = false;
                break;
            }
    // rank U = rank U U^T over Q; the Gram matrix is much smaller when there
    // are more designs than k-spaces.
    if (u.cols() > u.rows()) {
        c.lower_bound = rank_exact(mat_mul(u, u.transpose()));
        c.lower_bound_method = "rank(U U^T)";
    } else {
        c.lower_bound = rank_exact(u);
        c.lower_bound_method = "rank(U)";
    }
    c.meets = c.covers_all_ones && c.differences_annihilate && c.lower_bound == c.upper_bound &&
              Integer(static_cast<unsigned long>(c.upper_bound)) == c.dimension;
    return c;
}

} // namespace qsteiner
