#include "qsteiner/gfspaces.hpp"

#include "qsteiner/error.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace qsteiner {

namespace {

bool is_prime(unsigned v)
{
    if (v < 2)
        return false;
    for (unsigned d = 2; d * d <= v; ++d)
        if (v % d == 0)
            return false;
    return true;
}

std::vector<unsigned> fixed_modulus(unsigned q)
{
    switch (q) {
    case 4: return {1, 1, 1};    // x^2 + x + 1
    case 8: return {1, 1, 0, 1}; // x^3 + x + 1
    case 9: return {2, 2, 1};    // x^2 + 2x + 2
    default: return {0, 1};
    }
}

std::vector<unsigned> digits(unsigned value, unsigned p, unsigned e)
{
    std::vector<unsigned> d(e);
    for (unsigned i = 0; i < e; ++i) {
        d[i] = value % p;
        value /= p;
    }
    return d;
}

unsigned from_digits(const std::vector<unsigned>& d, unsigned p)
{
    unsigned v = 0;
    for (std::size_t i = d.size(); i-- > 0;)
        v = v * p + d[i];
    return v;
}

} // namespace

bool FieldSpec::supported(unsigned q)
{
    return q == 4 || q == 8 || q == 9 || (q <= 251 && is_prime(q));
}

FieldSpec::FieldSpec(unsigned q) : q_(q)
{
    if (!supported(q))
        throw InvalidArgument("unsupported field order q = " + std::to_string(q) +
                              " (primes up to 251 and q in {4, 8, 9})");
    unsigned long p = 0;
    is_prime_power(q, &p, &e_);
    p_ = static_cast<unsigned>(p);
    modulus_ = fixed_modulus(q);

    // Degree 2 and 3 moduli are irreducible iff they have no root in F_p.
    if (e_ > 1) {
        for (unsigned x = 0; x < p_; ++x) {
            unsigned v = 0;
            for (std::size_t i = modulus_.size(); i-- > 0;)
                v = (v * x + modulus_[i]) % p_;
            if (v == 0)
                throw InvalidArgument("field modulus is reducible");
        }
    }

    add_.resize(q * q);
    mul_.resize(q * q);
    neg_.resize(q);
    inv_.resize(q, 0);
    for (unsigned a = 0; a < q; ++a) {
        auto da = digits(a, p_, e_);
        for (unsigned b = 0; b < q; ++b) {
            auto db = digits(b, p_, e_);
            std::vector<unsigned> s(e_);
            for (unsigned i = 0; i < e_; ++i)
                s[i] = (da[i] + db[i]) % p_;
            add_[a * q + b] = static_cast<Elem>(from_digits(s, p_));

            std::vector<unsigned> prod(2 * e_ - 1, 0);
            for (unsigned i = 0; i < e_; ++i)
                for (unsigned j = 0; j < e_; ++j)
                    prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
            // Reduce modulo the monic modulus from the top degree down.
            for (std::size_t deg = prod.size(); deg-- > e_;) {
                unsigned c = prod[deg];
                if (c == 0)
                    continue;
                for (unsigned i = 0; i <= e_; ++i)
                    prod[deg - e_ + i] = (prod[deg - e_ + i] + (p_ - c) * modulus_[i]) % p_;
            }
            prod.resize(e_);
            mul_[a * q + b] = static_cast<Elem>(from_digits(prod, p_));
        }
    }
    for (unsigned a = 0; a < q; ++a) {
        for (unsigned b = 0; b < q; ++b) {
            if (add_[a * q + b] == 0)
                neg_[a] = static_cast<Elem>(b);
            if (mul_[a * q + b] == 1)
                inv_[a] = static_cast<Elem>(b);
        }
    }
    if (q <= 9)
        check_axioms();
}

void FieldSpec::check_axioms() const
{
    for (unsigned a = 0; a < q_; ++a) {
        if (add(a, 0) != a || mul(a, 1) != a || add(a, neg(a)) != 0)
            throw Error("field tables: identity or negation broken");
        if (a != 0 && mul(a, inv(a)) != 1)
            throw Error("field tables: missing inverse");
        for (unsigned b = 0; b < q_; ++b) {
            if (add(a, b) != add(b, a) || mul(a, b) != mul(b, a))
                throw Error("field tables: not commutative");
            for (unsigned c = 0; c < q_; ++c) {
                if (add(add(a, b), c) != add(a, add(b, c)) ||
                    mul(mul(a, b), c) != mul(a, mul(b, c)) ||
                    mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
                    throw Error("field tables: axiom violated");
            }
        }
    }
}

std::shared_ptr<const FieldSpec> FieldSpec::make(unsigned q)
{
    static std::mutex mutex;
    static std::map<unsigned, std::shared_ptr<const FieldSpec>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(q);
    if (it == cache.end())
        it = cache.emplace(q, std::make_shared<const FieldSpec>(q)).first;
    return it->second;
}

std::vector<unsigned> Subspace::pivots() const
{
    std::vector<unsigned> p;
    p.reserve(dim);
    for (unsigned r = 0; r < dim; ++r) {
        for (unsigned c = 0; c < ambient_n; ++c) {
            if (at(r, c) != 0) {
                p.push_back(c);
                break;
            }
        }
    }
    return p;
}

unsigned rref_in_place(std::vector<Elem>& m, unsigned rows, unsigned cols, const FieldSpec& f)
{
    unsigned rank = 0;
    for (unsigned col = 0; col < cols && rank < rows; ++col) {
        unsigned pivot = rows;
        for (unsigned r = rank; r < rows; ++r) {
            if (m[r * cols + col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot == rows)
            continue;
        if (pivot != rank)
            for (unsigned c = 0; c < cols; ++c)
                std::swap(m[pivot * cols + c], m[rank * cols + c]);
        const Elem inv = f.inv(m[rank * cols + col]);
        for (unsigned c = col; c < cols; ++c)
            m[rank * cols + c] = f.mul(m[rank * cols + c], inv);
        for (unsigned r = 0; r < rows; ++r) {
            if (r == rank)
                continue;
            const Elem factor = m[r * cols + col];
            if (factor == 0)
                continue;
            for (unsigned c = col; c < cols; ++c)
                m[r * cols + c] = f.sub(m[r * cols + c], f.mul(factor, m[rank * cols + c]));
        }
        ++rank;
    }
    return rank;
}

unsigned rank_over_field(std::vector<Elem> m, unsigned rows, unsigned cols, const FieldSpec& f)
{
    return rref_in_place(m, rows, cols, f);
}

Subspace span_of(std::span<const Elem> rows, unsigned nrows, unsigned n, const FieldSpec& field)
{
    if (rows.size() != static_cast<std::size_t>(nrows) * n)
        throw DimensionMismatch("span_of: row data does not match the stated shape");
    std::vector<Elem> m(rows.begin(), rows.end());
    for (Elem e : m)
        if (e >= field.q())
            throw InvalidArgument("span_of: entry outside the field");
    unsigned rank = rref_in_place(m, nrows, n, field);
    m.resize(static_cast<std::size_t>(rank) * n);
    return Subspace{n, rank, std::move(m), Subspace::npos};
}

namespace {

// Non-pivot positions of an RREF with the given pivots, row-major.
std::vector<std::pair<unsigned, unsigned>> free_positions(const std::vector<unsigned>& pivots,
                                                          unsigned n)
{
    std::vector<bool> is_pivot(n, false);
    for (unsigned p : pivots)
        is_pivot[p] = true;
    std::vector<std::pair<unsigned, unsigned>> out;
    for (unsigned r = 0; r < pivots.size(); ++r)
        for (unsigned c = pivots[r] + 1; c < n; ++c)
            if (!is_pivot[c])
                out.emplace_back(r, c);
    return out;
}

} // namespace

bool canonical_less(const Subspace& a, const Subspace& b)
{
    auto pa = a.pivots();
    auto pb = b.pivots();
    if (pa != pb) {
        if (pa.size() != pb.size())
            return pa.size() < pb.size();
        for (std::size_t i = pa.size(); i-- > 0;)
            if (pa[i] != pb[i])
                return pa[i] < pb[i];
    }
    for (auto [r, c] : free_positions(pa, a.ambient_n)) {
        Elem x = a.at(r, c);
        Elem y = b.at(r, c);
        if (x != y)
            return x < y;
    }
    return false;
}

void for_each_subspace(unsigned n, unsigned k, const FieldSpec& field,
                       const std::function<bool(const Subspace&)>& visit)
{
    if (k > n)
        return;
    const unsigned q = field.q();
    std::vector<unsigned> pivots(k);
    for (unsigned i = 0; i < k; ++i)
        pivots[i] = i;
    while (true) {
        auto frees = free_positions(pivots, n);
        Subspace s{n, k, std::vector<Elem>(static_cast<std::size_t>(k) * n, 0), Subspace::npos};
        for (unsigned r = 0; r < k; ++r)
            s.basis[r * n + pivots[r]] = 1;
        std::vector<Elem> counter(frees.size(), 0);
        while (true) {
            for (std::size_t f = 0; f < frees.size(); ++f)
                s.basis[frees[f].first * n + frees[f].second] = counter[f];
            if (!visit(s))
                return;
            // Increment with the last free position least significant.
            std::size_t pos = frees.size();
            while (pos > 0) {
                --pos;
                if (++counter[pos] < q)
                    break;
                counter[pos] = 0;
                if (pos == 0) {
                    pos = frees.size() + 1;
                    break;
                }
            }
            if (frees.empty() || pos == frees.size() + 1)
                break;
        }
        // Next k-subset in colex order.
        unsigned i = 0;
        while (i < k && pivots[i] + 1 == (i + 1 < k ? pivots[i + 1] : n))
            ++i;
        if (i == k)
            return;
        ++pivots[i];
        for (unsigned j = 0; j < i; ++j)
            pivots[j] = j;
    }
}

Grassmannian::Grassmannian(unsigned n, unsigned k, std::shared_ptr<const FieldSpec> field,
                           std::size_t max_size)
    : n_(n), k_(k), field_(std::move(field))
{
    if (k > n)
        throw InvalidArgument("Grassmannian: k > n");
    Rational count = gauss_binom(n, k, field_->q());
    if (count > Rational(static_cast<double>(max_size)))
        throw GuardExceeded("Grassmannian: [" + std::to_string(n) + " " + std::to_string(k) +
                            "]_" + std::to_string(field_->q()) + " = " + to_string(count) +
                            " exceeds the enumeration guard " + std::to_string(max_size));
    items_.reserve(count.get_num().get_ui());
    for_each_subspace(n, k, *field_, [&](const Subspace& s) {
        Subspace copy = s;
        copy.index = items_.size();
        lookup_.emplace(copy.key(), copy.index);
        items_.push_back(std::move(copy));
        return true;
    });
}

std::optional<std::size_t> Grassmannian::index_of(const Subspace& s) const
{
    if (s.ambient_n != n_ || s.dim != k_)
        return std::nullopt;
    auto it = lookup_.find(s.key());
    if (it == lookup_.end())
        return std::nullopt;
    return it->second;
}

std::vector<Subspace> enumerate_subspaces(unsigned n, unsigned k, const FieldSpec& field)
{
    std::vector<Subspace> out;
    for_each_subspace(n, k, field, [&](const Subspace& s) {
        Subspace copy = s;
        copy.index = out.size();
        out.push_back(std::move(copy));
        return true;
    });
    return out;
}

unsigned intersection_dim(const Subspace& a, const Subspace& b, const FieldSpec& field)
{
    if (a.ambient_n != b.ambient_n)
        throw DimensionMismatch("intersection_dim: ambient dimensions differ");
    std::vector<Elem> stacked(a.basis);
    stacked.insert(stacked.end(), b.basis.begin(), b.basis.end());
    unsigned r = rref_in_place(stacked, a.dim + b.dim, a.ambient_n, field);
    return a.dim + b.dim - r;
}

Subspace intersection(const Subspace& a, const Subspace& b, const FieldSpec& field)
{
    if (a.ambient_n != b.ambient_n)
        throw DimensionMismatch("intersection: ambient dimensions differ");
    const unsigned n = a.ambient_n;
    const unsigned rows = a.dim + b.dim;
    std::vector<Elem> m(static_cast<std::size_t>(rows) * 2 * n, 0);
    for (unsigned r = 0; r < a.dim; ++r)
        for (unsigned c = 0; c < n; ++c) {
            m[r * 2 * n + c] = a.at(r, c);
            m[r * 2 * n + n + c] = a.at(r, c);
        }
    for (unsigned r = 0; r < b.dim; ++r)
        for (unsigned c = 0; c < n; ++c)
            m[(a.dim + r) * 2 * n + c] = b.at(r, c);
    unsigned rank = rref_in_place(m, rows, 2 * n, field);
    std::vector<Elem> meet;
    unsigned count = 0;
    for (unsigned r = 0; r < rank; ++r) {
        bool left_zero = true;
        for (unsigned c = 0; c < n; ++c)
            if (m[r * 2 * n + c] != 0) {
                left_zero = false;
                break;
            }
        if (!left_zero)
            continue;
        meet.insert(meet.end(), m.begin() + r * 2 * n + n, m.begin() + (r + 1) * 2 * n);
        ++count;
    }
    return span_of(meet, count, n, field);
}

bool contains(const Subspace& outer, const Subspace& inner, const FieldSpec& field)
{
    return inner.dim <= outer.dim && intersection_dim(outer, inner, field) == inner.dim;
}

std::vector<Subspace> subspaces_of(const Subspace& w, unsigned j, const FieldSpec& field)
{
    std::vector<Subspace> out;
    const unsigned n = w.ambient_n;
    for_each_subspace(w.dim, j, field, [&](const Subspace& local) {
        std::vector<Elem> rows(static_cast<std::size_t>(j) * n, 0);
        for (unsigned r = 0; r < j; ++r)
            for (unsigned i = 0; i < w.dim; ++i) {
                Elem c = local.at(r, i);
                if (c == 0)
                    continue;
                for (unsigned col = 0; col < n; ++col)
                    rows[r * n + col] = field.add(rows[r * n + col], field.mul(c, w.at(i, col)));
            }
        out.push_back(span_of(rows, j, n, field));
        return true;
    });
    return out;
}

Integer mobius_interval(unsigned d, unsigned long q)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), q, static_cast<unsigned long>(binom2(d)));
    return (d % 2 == 0) ? r : Integer(-r);
}

Integer spanning_count_formula(unsigned m, unsigned d, unsigned long q)
{
    if (m == 0)
        throw InvalidArgument("spanning_count_formula: m must be positive");
    Rational total(0);
    for (unsigned j = 0; j <= d; ++j) {
        Rational points = q_int(j, q);
        Integer choose = binomial(points.get_num(), m);
        Rational term = gauss_binom(d, j, q) * Rational(mobius_interval(d - j, q)) * Rational(choose);
        total += term;
    }
    if (total.get_den() != 1)
        throw Error("spanning_count_formula: non-integral result");
    return total.get_num();
}

namespace {

// Nonzero vectors of F_q^d whose first nonzero coordinate is 1.
std::vector<std::vector<Elem>> projective_points(unsigned d, const FieldSpec& field)
{
    std::vector<std::vector<Elem>> out;
    for (const Subspace& s : enumerate_subspaces(d, 1, field))
        out.push_back(s.basis);
    return out;
}

// Echelon basis that grows one vector at a time.
struct RunningSpan {
    std::vector<std::vector<Elem>> rows;
    std::vector<unsigned> pivots;

    bool insert(std::vector<Elem> v, const FieldSpec& f)
    {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Elem c = v[pivots[i]];
            if (c == 0)
                continue;
            for (std::size_t col = 0; col < v.size(); ++col)
                v[col] = f.sub(v[col], f.mul(c, rows[i][col]));
        }
        auto it = std::find_if(v.begin(), v.end(), [](Elem e) { return e != 0; });
        if (it == v.end())
            return false;
        Elem inv = f.inv(*it);
        for (Elem& e : v)
            e = f.mul(e, inv);
        pivots.push_back(static_cast<unsigned>(it - v.begin()));
        rows.push_back(std::move(v));
        return true;
    }
};

void count_spanning(const std::vector<std::vector<Elem>>& points, std::size_t start,
                    unsigned remaining, const RunningSpan& span, unsigned d,
                    const FieldSpec& field, Integer& count)
{
    if (remaining == 0) {
        if (span.rows.size() == d)
            ++count;
        return;
    }
    for (std::size_t i = start; i + remaining <= points.size(); ++i) {
        RunningSpan next = span;
        next.insert(points[i], field);
        count_spanning(points, i + 1, remaining - 1, next, d, field, count);
    }
}

} // namespace

Integer spanning_count_bruteforce(unsigned m, unsigned d, const FieldSpec& field,
                                  std::uint64_t subset_budget)
{
    if (m == 0)
        throw InvalidArgument("spanning_count_bruteforce: m must be positive");
    Integer qd;
    mpz_ui_pow_ui(qd.get_mpz_t(), field.q(), d);
    if (qd > 65536)
        throw GuardExceeded("spanning_count_bruteforce: q^d exceeds 2^16");
    Integer npoints = q_int(d, field.q()).get_num();
    if (npoints < m)
        return 0;
    if (binomial(npoints, m) > Integer(std::to_string(subset_budget)))
        throw GuardExceeded("spanning_count_bruteforce: C(" + npoints.get_str() + ", " +
                            std::to_string(m) + ") subsets exceed the budget");
    auto points = projective_points(d, field);
    Integer count = 0;
    count_spanning(points, 0, m, RunningSpan{}, d, field, count);
    return count;
}

Integer spanning_count_growth(unsigned m, unsigned d, unsigned long q)
{
    // ways[j] = ordered sequences of the current length whose span has dim j.
    std::vector<Integer> points(d + 1);
    for (unsigned j = 0; j <= d; ++j)
        points[j] = q_int(j, q).get_num();
    std::vector<Integer> ways(d + 1, 0);
    ways[0] = 1;
    for (unsigned len = 0; len < m; ++len) {
        std::vector<Integer> next(d + 1, 0);
        for (unsigned j = 0; j <= d; ++j) {
            if (ways[j] == 0)
                continue;
            // Stay inside the span: any unused point of it.
            Integer inside = points[j] - len;
            if (inside > 0)
                next[j] += ways[j] * inside;
            if (j < d)
                next[j + 1] += ways[j] * (points[d] - points[j]);
        }
        ways = std::move(next);
    }
    Integer factorial;
    mpz_fac_ui(factorial.get_mpz_t(), m);
    return ways[d] / factorial;
}

IntersectionCounts count_fixed_intersection(unsigned a, unsigned b, unsigned u, unsigned n,
                                            unsigned long q)
{
    if (!(a <= std::min(b, u) && std::max(b, u) <= n))
        throw InvalidArgument("count_fixed_intersection: need a <= min(b,u) <= max(b,u) <= n");
    Rational power = q_power(q, static_cast<long>(b - a) * static_cast<long>(u - a));
    Rational first = power * gauss_binom(n - b, static_cast<long>(u) - a, q);
    Rational second = first * gauss_binom(b, a, q);
    return {first.get_num(), second.get_num()};
}

IntersectionCounts count_fixed_intersection_bruteforce(unsigned a, unsigned b, unsigned u,
                                                       unsigned n, const FieldSpec& field,
                                                       std::size_t max_enumerated)
{
    if (!(a <= std::min(b, u) && std::max(b, u) <= n))
        throw InvalidArgument("count_fixed_intersection_bruteforce: bad parameters");
    if (gauss_binom(n, u, field.q()) > Rational(static_cast<double>(max_enumerated)))
        throw GuardExceeded("count_fixed_intersection_bruteforce: [n u]_q exceeds the guard");
    auto unit_span = [&](unsigned dim) {
        std::vector<Elem> rows(static_cast<std::size_t>(dim) * n, 0);
        for (unsigned i = 0; i < dim; ++i)
            rows[i * n + i] = 1;
        return span_of(rows, dim, n, field);
    };
    const Subspace big = unit_span(b);
    const Subspace small = unit_span(a);
    IntersectionCounts counts{0, 0};
    for_each_subspace(n, u, field, [&](const Subspace& s) {
        if (intersection_dim(s, big, field) == a) {
            ++counts.dimension_a;
            if (contains(s, small, field))
                ++counts.equal_to_a;
        }
        return true;
    });
    return counts;
}

Integer mobius_delta_sum(const Subspace& w, const FieldSpec& field)
{
    Integer sum = 0;
    for (unsigned j = 0; j <= w.dim; ++j) {
        Integer mu = mobius_interval(w.dim - j, field.q());
        sum += mu * static_cast<unsigned long>(subspaces_of(w, j, field).size());
    }
    return sum;
}

bool mobius_delta_check(const Subspace& w, const FieldSpec& field)
{
    if (w.dim > 4 || field.q() > 3)
        throw GuardExceeded("mobius_delta_check: requires dim W <= 4 and q <= 3");
    Integer enumerated = mobius_delta_sum(w, field);
    Rational closed(0);
    for (unsigned j = 0; j <= w.dim; ++j)
        closed += gauss_binom(w.dim, j, field.q()) * Rational(mobius_interval(w.dim - j, field.q()));
    const Integer delta = (w.dim == 0) ? 1 : 0;
    return enumerated == delta && closed == Rational(delta);
}

} // namespace qsteiner
