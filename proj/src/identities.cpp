#include "qsteiner/identities.hpp"

#include "qsteiner/error.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace qsteiner {

namespace {

using Params = std::vector<std::pair<std::string, Rational>>;

// Per-thread memo of [n k]_q; the sweep asks for the same few hundred values
// millions of times.
const Rational& qb(long n, long k, unsigned long q)
{
    thread_local std::map<std::tuple<long, long, unsigned long>, Rational> cache;
    auto key = std::make_tuple(n, k, q);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, gauss_binom(n, k, q)).first;
    return it->second;
}

const Rational& qp(unsigned long q, long e)
{
    thread_local std::map<std::pair<unsigned long, long>, Rational> cache;
    auto key = std::make_pair(q, e);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, q_power(q, e)).first;
    return it->second;
}

long sign(long e) { return (e % 2 == 0) ? 1 : -1; }

Rational poch(long e, long len, unsigned long q)
{
    return q_pochhammer(QExponent{e}, static_cast<unsigned long>(len), q);
}

Params params(std::initializer_list<std::pair<const char*, long>> list)
{
    Params p;
    for (auto& [name, v] : list)
        p.emplace_back(name, Rational(v));
    return p;
}

IdentityReport make_report(std::string name, Params p, Rational lhs, Rational rhs)
{
    IdentityReport r;
    r.name = std::move(name);
    r.parameters = std::move(p);
    r.equal = (lhs == rhs);
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    return r;
}

void require_nonzero(const Rational& v, const std::string& what)
{
    if (sgn(v) == 0)
        throw VanishingDenominator(what + " vanishes");
}

std::string bracket(long n, long k)
{
    return "[" + std::to_string(n) + " " + std::to_string(k) + "]";
}

} // namespace

Rational eval_3phi2(const std::array<QExponent, 3>& upper, const std::array<QExponent, 2>& lower,
                    QExponent z, unsigned long q)
{
    std::optional<long> m;
    for (const auto& u : upper)
        if (u.exponent <= 0)
            m = m ? std::min(*m, -u.exponent) : -u.exponent;
    if (!m)
        throw InvalidArgument("3phi2 does not terminate: no upper parameter is q^{-m}");
    for (const auto& l : lower)
        if (l.exponent <= 0 && -l.exponent < *m)
            throw VanishingDenominator("3phi2 lower parameter q^" + std::to_string(l.exponent) +
                                       " vanishes before the series terminates");
    Rational sum(0);
    for (long l = 0; l <= *m; ++l) {
        Rational num(1);
        for (const auto& u : upper)
            num *= poch(u.exponent, l, q);
        Rational den = poch(lower[0].exponent, l, q) * poch(lower[1].exponent, l, q) * poch(1, l, q);
        sum += num / den * qp(q, z.exponent * l);
    }
    return sum;
}

IdentityReport check_transf32(long n, QExponent a, QExponent b, QExponent c, QExponent d,
                              unsigned long q)
{
    if (n < 0)
        throw InvalidArgument("transf32: n must be nonnegative");
    const long e = c.exponent + d.exponent - a.exponent - b.exponent;
    for (long x : {c.exponent, d.exponent, e})
        require_nonzero(poch(x, n, q), "(q^" + std::to_string(x) + ";q)_" + std::to_string(n));
    Rational lhs = eval_3phi2({QExponent{-n}, a, b}, {c, d}, QExponent{1}, q);
    Rational rhs = poch(e, n, q) / poch(d.exponent, n, q) *
                   qp(q, (a.exponent + b.exponent - c.exponent) * n) *
                   eval_3phi2({QExponent{-n}, QExponent{c.exponent - a.exponent},
                               QExponent{c.exponent - b.exponent}},
                              {c, QExponent{e}}, QExponent{1}, q);
    return make_report("transf32",
                       params({{"n", n}, {"a", a.exponent}, {"b", b.exponent},
                               {"c", c.exponent}, {"d", d.exponent}, {"q", long(q)}}),
                       lhs, rhs);
}

std::vector<IdentityReport> check_poch_suite(long n, long k, unsigned long q)
{
    std::vector<IdentityReport> out;
    auto p = [&] { return params({{"n", n}, {"k", k}, {"q", long(q)}}); };
    if (0 <= k && k <= n)
        out.push_back(make_report("qbin_only_poch", p(), gauss_binom(n, k, q),
                                  poch(1, n, q) / (poch(1, k, q) * poch(1, n - k, q))));
    if (n >= 0)
        out.push_back(make_report("qbin_only_poch_sum", p(), gauss_binom(n + k, n, q),
                                  poch(k + 1, n, q) / poch(1, n, q)));
    if (k >= 0)
        out.push_back(make_report("qbin_poch", p(), gauss_binom(n, k, q),
                                  poch(-n, k, q) / poch(1, k, q) * sign(k) *
                                      q_power(q, k * n - binom2(k))));
    if (0 <= k && k <= n)
        out.push_back(make_report("poch_diff", p(), poch(1, n - k, q),
                                  poch(1, n, q) / poch(-n, k, q) * sign(k) *
                                      q_power(q, binom2(k) - n * k)));
    if (n >= 0 && k >= 0)
        out.push_back(make_report("poch_sum", p(), poch(1, n + k, q),
                                  poch(1, n, q) * poch(n + 1, k, q)));
    if (k >= 0)
        out.push_back(make_report("upper_negation", p(), gauss_binom(n, k, q),
                                  sign(k) * q_power(q, k * n - binom2(k)) *
                                      gauss_binom(k - n - 1, k, q)));
    return out;
}

IdentityReport check_q_binomial_theorem(long n, const Rational& x, const Rational& y,
                                        unsigned long q)
{
    if (n < 0)
        throw InvalidArgument("q-binomial theorem: n must be nonnegative");
    Rational lhs(0);
    for (long k = 0; k <= n; ++k) {
        Rational xk(1), yk(1);
        for (long j = 0; j < k; ++j)
            xk *= x;
        for (long j = 0; j < n - k; ++j)
            yk *= y;
        lhs += gauss_binom(n, k, q) * q_power(q, binom2(k)) * xk * yk;
    }
    Rational rhs(1);
    for (long i = 0; i < n; ++i)
        rhs *= x * q_power(q, i) + y;
    Params p{{"n", Rational(n)}, {"x", x}, {"y", y}, {"q", Rational(long(q))}};
    return make_report("q_binomial_theorem", std::move(p), lhs, rhs);
}

IdentityReport check_kurihara(long x, long y, long h, long p, unsigned long q)
{
    if (h < 0 || p < h)
        throw InvalidArgument("kurihara: need 0 <= h <= p");
    Rational lhs = qb(x, h, q) * qb(y - x, p - h, q);
    Rational first(0), second(0);
    for (long v = h; v <= p; ++v)
        first += sign(v - h) * qb(v, h, q) * qb(y - v, p - v, q) * qb(x, v, q) *
                 qp(q, -(p - h) * (x - h) + binom2(v - h));
    for (long v = h; v <= p; ++v)
        second += sign(v - h) * qb(v, h, q) * qb(y - v, p - v, q) * qb(x, v, q) *
                  qp(q, (v - h) * (y - x - p + h) + binom2(v - h + 1));
    IdentityReport r = make_report(
        "kurihara", params({{"x", x}, {"y", y}, {"h", h}, {"p", p}, {"q", long(q)}}), lhs, first);
    r.equal = r.equal && (lhs == second);
    r.alt_rhs = std::move(second);
    return r;
}

IdentityReport check_lv_wang(long x, long a, unsigned long q)
{
    if (a < 0)
        throw InvalidArgument("lv_wang: a must be nonnegative");
    Rational lhs(0);
    for (long v = 0; v <= a; ++v)
        lhs += sign(v) * qb(x, v, q) * qp(q, binom2(v));
    Rational rhs = qp(q, x * a) * qb(a - x, a, q);
    return make_report("lv_wang", params({{"x", x}, {"a", a}, {"q", long(q)}}), lhs, rhs);
}

IdentityReport check_identity1(long n, long r, long k, long u, long i, unsigned long q)
{
    if (r > n + 1 || u < 0)
        throw InvalidArgument("identity1: need r <= n+1 and u >= 0");
    for (long s = 0; s <= u; ++s)
        require_nonzero(qb(r - i + s, s, q), bracket(r - i + s, s));
    Rational lhs(0);
    for (long s = 0; s <= u; ++s) {
        const Rational& c = qb(k - i + s, s, q);
        lhs += sign(s) * qp(q, binom2(u - s)) * qb(n - r + 1, u - s, q) * c * c / qb(r - i + s, s, q);
    }
    Rational inner(0);
    for (long s = 0; s <= u; ++s) {
        const Rational& c = qb(k - r, s, q);
        inner += sign(s) * qp(q, binom2(u - s) + s * (2 * r - 2 * k + s - 1)) *
                 qb(n - 2 * k + i, u - s, q) * c * c / qb(r - i + s, s, q);
    }
    Rational rhs = qp(q, u * (2 * k - i - r + 1)) * inner;
    return make_report("identity1",
                       params({{"n", n}, {"r", r}, {"k", k}, {"u", u}, {"i", i}, {"q", long(q)}}),
                       lhs, rhs);
}

IdentityReport check_identity2(long n, long r, long k, long i, unsigned long q)
{
    if (r > n + 1 || i < 0)
        throw InvalidArgument("identity2: need r <= n+1 and i >= 0");
    for (long s = 0; s <= i; ++s) {
        require_nonzero(qb(n - r - i + s + 1, s, q), bracket(n - r - i + s + 1, s));
        require_nonzero(qb(n - 2 * k + s, s, q), bracket(n - 2 * k + s, s));
    }
    Rational left(0);
    for (long s = 0; s <= i; ++s) {
        const Rational& c = qb(k - i + s, s, q);
        left += sign(s) * qp(q, binom2(i - s)) * qb(r, i - s, q) * c * c /
                qb(n - r - i + s + 1, s, q);
    }
    Rational lhs = qb(n - r + 1, i, q) * left;
    Rational right(0);
    for (long s = 0; s <= i; ++s) {
        const Rational& c = qb(k - r, s, q);
        right += sign(s) * qp(q, binom2(i - s) + s * (2 * r - 2 * k + s - 1)) * qb(r, i - s, q) *
                 c * c / qb(n - 2 * k + s, s, q);
    }
    Rational rhs = qp(q, i * (2 * k - r - i + 1)) * qb(n - 2 * k + i, i, q) * right;
    return make_report("identity2",
                       params({{"n", n}, {"r", r}, {"k", k}, {"i", i}, {"q", long(q)}}), lhs, rhs);
}

IdentityReport check_identity3(long n, long r, long k, long t, unsigned long q)
{
    if (t < 0 || r > n + 1)
        throw InvalidArgument("identity3: need t >= 0 and r <= n+1");
    require_nonzero(qb(k, t, q), bracket(k, t));
    for (long i = 0; i <= t; ++i) {
        require_nonzero(qb(k, i, q), bracket(k, i));
        for (long s = 0; s <= i; ++s)
            require_nonzero(qb(n - 2 * k + s, s, q), bracket(n - 2 * k + s, s));
    }
    Rational lhs(0);
    for (long i = 0; i <= t; ++i)
        for (long s = 0; s <= i; ++s) {
            const Rational& c = qb(k - r, s, q);
            lhs += sign(s) * qp(q, i * (2 * k - t - r + 1) + binom2(s) + s * (2 * r - 2 * k + s - i)) *
                   qb(n - 2 * k + i, i, q) * qb(k - i, t - i, q) * qb(r, i - s, q) * c * c /
                   (qb(k, i, q) * qb(n - 2 * k + s, s, q));
        }
    Rational rhs = qb(r, t, q) * qb(n - r + 1, t, q) / qb(k, t, q);
    return make_report("identity3",
                       params({{"n", n}, {"r", r}, {"k", k}, {"t", t}, {"q", long(q)}}), lhs, rhs);
}

IdentityReport check_threesums1(long n, long k, long r, long t, unsigned long q)
{
    if (t < 0 || r > n + 1)
        throw InvalidArgument("threesums1: need t >= 0 and r <= n+1");
    require_nonzero(qb(k, t, q), bracket(k, t));
    Rational lhs(0);
    for (long i = 0; i <= t; ++i)
        for (long j = 0; j <= t - i; ++j)
            for (long s = 0; s <= i; ++s) {
                Rational den = qb(k, i, q) * qb(k - i - j, t - i - j, q) * qb(n - 2 * k + s, s, q);
                require_nonzero(den, bracket(k, i) + bracket(k - i - j, t - i - j) +
                                         bracket(n - 2 * k + s, s));
                const Rational& c = qb(k - r, s, q);
                lhs += sign(i + j + s) *
                       qp(q, -(k - i) * (k - i) + binom2(j) + binom2(s + r - i) + (k - s - r) * (k - s)) *
                       qb(n - 2 * k + i, i, q) * qb(k - i, j, q) * qb(n - i - j, t - i - j, q) *
                       qb(r, i - s, q) * c * c / den;
            }
    Rational rhs = sign(t) * qp(q, binom2(r) - k * r + binom2(t + 1)) * qb(r - 1, t, q) *
                   qb(n - r, t, q) / qb(k, t, q);
    return make_report("threesums1",
                       params({{"n", n}, {"k", k}, {"r", r}, {"t", t}, {"q", long(q)}}), lhs, rhs);
}

IdentityReport check_threesums2(long n, long k, long r, long t, unsigned long q)
{
    if (t < 0 || r > n + 1)
        throw InvalidArgument("threesums2: need t >= 0 and r <= n+1");
    Rational lhs(0);
    for (long a = 0; a <= t; ++a) {
        require_nonzero(qb(k, a, q), bracket(k, a));
        Rational c;
        if (a == t) {
            c = qp(q, binom2(t + 1));
        } else {
            Rational qk = q_int(k - a, q);
            require_nonzero(qk, "[" + std::to_string(k - a) + "]_q");
            c = qp(q, binom2(a + 1) + n - a) * q_int(k - n, q) / qk;
        }
        lhs += sign(a) * c * qb(r - 1, a, q) * qb(n - r, a, q) / qb(k, a, q);
    }
    Rational rhs(0);
    for (long i = 0; i <= t; ++i)
        for (long j = 0; j <= t - i; ++j)
            for (long s = 0; s <= i; ++s) {
                Rational den = qb(k, i, q) * qb(n - 2 * k + s, s, q);
                require_nonzero(den, bracket(k, i) + bracket(n - 2 * k + s, s));
                const Rational& c = qb(k - r, s, q);
                rhs += sign(i + j + s) *
                       qp(q, -binom2(r) + k * r - (k - i) * (k - i) + binom2(j) + binom2(s + r - i) +
                                 (k - s - r) * (k - s)) *
                       qb(n - 2 * k + i, i, q) * qb(k - i, j, q) * qb(r, i - s, q) * c * c / den;
            }
    return make_report("threesums2",
                       params({{"n", n}, {"k", k}, {"r", r}, {"t", t}, {"q", long(q)}}), lhs, rhs);
}

namespace {

Rational mu_zero_sum(long n, long k, long t, long r, unsigned long q)
{
    Rational sum(0);
    for (long i = 0; i < t; ++i)
        sum += sign(i) * qp(q, binom2(i)) * qb(k - i - 1, r - i - 1, q) * qb(n - r, i, q);
    return sum;
}

} // namespace

IdentityReport check_mu_zero_identity(long n, long k, long t, long r, unsigned long q)
{
    if (r < 1)
        throw InvalidArgument("mu_zero: need r >= 1");
    Rational lhs = mu_zero_sum(n, k, t, r, q);
    Rational rhs = sign(r - 1) * qp(q, k * r - k - binom2(r)) * qb(n - k - 1, r - 1, q);
    IdentityReport rep = make_report(
        "mu_zero", params({{"n", n}, {"k", k}, {"t", t}, {"r", r}, {"q", long(q)}}), lhs, rhs);
    rep.expected_equal = (1 <= r && r <= t);
    return rep;
}

ValuationReport check_mu_zero_valuation(long n, long k, long t, long r, unsigned long q)
{
    Rational sum = mu_zero_sum(n, k, t, r, q);
    if (sum.get_den() != 1)
        throw Error("mu_zero_valuation: alternating sum is not an integer");
    Valuation v = v_q(sum.get_num(), q);
    const long expected = binom2(t);
    const bool ok = !v.is_infinite() && v.value() == static_cast<unsigned long>(expected);
    return ValuationReport{n, k, t, r, q, sum, v, expected, ok};
}

SweepSummary run_identity_sweep(const SweepConfig& config,
                                const std::function<void(const SweepRow&)>& sink)
{
    for (unsigned long q : config.qs)
        require_prime_power(q);
    if (config.max_n < 0)
        throw InvalidArgument("identity sweep: max_n must be nonnegative");

    SweepSummary summary;
    const long N = config.max_n;
    // n = 0 alone is a degenerate grid; treat it as an empty sweep.
    if (N == 0)
        return summary;

    auto emit = [&](const IdentityReport& rep) {
        auto& tally = summary.per_identity[rep.name];
        ++tally.checked;
        ++summary.checked;
        if (!rep.passed()) {
            ++tally.failed;
            ++summary.failed;
        }
        if (sink) {
            SweepRow row;
            row.report = &rep;
            sink(row);
        }
    };
    auto skip = [&](const std::string& name, Params p, const std::string& reason) {
        ++summary.per_identity[name].skipped;
        ++summary.skipped;
        if (sink) {
            SweepRow row;
            row.skipped_name = name;
            row.skipped_parameters = std::move(p);
            row.skip_reason = reason;
            sink(row);
        }
    };
    // Runs one check; precondition failures and vanishing denominators become
    // skip rows.
    auto attempt = [&](const std::string& name, Params p, auto&& check) {
        try {
            emit(check());
        } catch (const VanishingDenominator& e) {
            skip(name, std::move(p), e.what());
        } catch (const InvalidArgument& e) {
            skip(name, std::move(p), e.what());
        }
    };

    const std::vector<Rational> xy_values{Rational(-2), Rational(-1), Rational(-1, 2), Rational(0),
                                          Rational(1, 3), Rational(1), Rational(2)};

    for (unsigned long q : config.qs) {
        const long Q = static_cast<long>(q);

        for (long n = -N; n <= N; ++n)
            for (long k = -N; k <= N; ++k)
                for (const auto& rep : check_poch_suite(n, k, q))
                    emit(rep);

        for (long n = 0; n <= N; ++n)
            for (const auto& x : xy_values)
                for (const auto& y : xy_values)
                    emit(check_q_binomial_theorem(n, x, y, q));

        const long tn = std::min(N, config.transf_max_n);
        const long lo = config.transf_min_exp, hi = config.transf_max_exp;
        for (long n = 0; n <= tn; ++n)
            for (long a = lo; a <= hi; ++a)
                for (long b = lo; b <= hi; ++b)
                    for (long c = lo; c <= hi; ++c)
                        for (long d = lo; d <= hi; ++d)
                            attempt("transf32",
                                    params({{"n", n}, {"a", a}, {"b", b}, {"c", c}, {"d", d}, {"q", Q}}),
                                    [&] {
                                        return check_transf32(n, QExponent{a}, QExponent{b},
                                                              QExponent{c}, QExponent{d}, q);
                                    });

        for (long x = config.min_xy; x <= N; ++x)
            for (long y = config.min_xy; y <= N; ++y)
                for (long p = 0; p <= config.max_hp; ++p)
                    for (long h = 0; h <= p; ++h)
                        emit(check_kurihara(x, y, h, p, q));

        for (long x = -N; x <= N; ++x)
            for (long a = 0; a <= N; ++a)
                emit(check_lv_wang(x, a, q));

        for (long n = 0; n <= N; ++n)
            for (long r = 0; r <= n + 1; ++r)
                for (long k = 0; k <= n; ++k) {
                    for (long u = 0; u <= config.max_u; ++u)
                        for (long i = 0; i <= config.max_u; ++i)
                            attempt("identity1",
                                    params({{"n", n}, {"r", r}, {"k", k}, {"u", u}, {"i", i}, {"q", Q}}),
                                    [&] { return check_identity1(n, r, k, u, i, q); });
                    for (long i = 0; i <= config.max_u; ++i)
                        attempt("identity2", params({{"n", n}, {"r", r}, {"k", k}, {"i", i}, {"q", Q}}),
                                [&] { return check_identity2(n, r, k, i, q); });
                    for (long t = 0; t <= k; ++t) {
                        attempt("identity3", params({{"n", n}, {"r", r}, {"k", k}, {"t", t}, {"q", Q}}),
                                [&] { return check_identity3(n, r, k, t, q); });
                        attempt("threesums1", params({{"n", n}, {"k", k}, {"r", r}, {"t", t}, {"q", Q}}),
                                [&] { return check_threesums1(n, k, r, t, q); });
                        attempt("threesums2", params({{"n", n}, {"k", k}, {"r", r}, {"t", t}, {"q", Q}}),
                                [&] { return check_threesums2(n, k, r, t, q); });
                    }
                }

        // The vanishing statement is about 1 <= t < k, n >= 2k and r <= k.
        for (long n = 0; n <= N; ++n)
            for (long k = 1; 2 * k <= n; ++k)
                for (long t = 1; t < k; ++t)
                    for (long r = 1; r <= k; ++r) {
                        emit(check_mu_zero_identity(n, k, t, r, q));
                        if (r > t) {
                            ValuationReport v = check_mu_zero_valuation(n, k, t, r, q);
                            auto& tally = summary.per_identity["mu_zero_valuation"];
                            ++tally.checked;
                            ++summary.checked;
                            if (!v.equal) {
                                ++tally.failed;
                                ++summary.failed;
                            }
                            if (sink) {
                                SweepRow row;
                                row.valuation = &v;
                                sink(row);
                            }
                        }
                    }
    }
    return summary;
}

} // namespace qsteiner
