#include "qsteiner/exactq.hpp"

#include "qsteiner/error.hpp"

#include <cstdlib>

namespace qsteiner {

bool is_prime_power(unsigned long q, unsigned long* prime, unsigned* degree)
{
    if (q < 2)
        return false;
    unsigned long p = 0;
    for (unsigned long d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0)
        p = q;
    unsigned e = 0;
    unsigned long rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1)
        return false;
    if (prime)
        *prime = p;
    if (degree)
        *degree = e;
    return true;
}

void require_prime_power(unsigned long q)
{
    if (q >= (1ul << 20) || !is_prime_power(q))
        throw InvalidArgument("q = " + std::to_string(q) + " is not a prime power below 2^20");
}

namespace {

// Validation is on every entry point; remember the last q that passed.
void check_q(unsigned long q)
{
    thread_local unsigned long last_ok = 0;
    if (q == last_ok)
        return;
    require_prime_power(q);
    last_ok = q;
}

} // namespace

Rational q_power(unsigned long q, long exponent)
{
    Integer magnitude;
    mpz_ui_pow_ui(magnitude.get_mpz_t(), q, static_cast<unsigned long>(std::labs(exponent)));
    if (exponent >= 0)
        return Rational(magnitude);
    Rational r(Integer(1), magnitude);
    r.canonicalize();
    return r;
}

Rational gauss_binom(long n, long k, unsigned long q)
{
    check_q(q);
    if (k < 0)
        return Rational(0);
    Rational numerator(1);
    Integer denominator(1);
    for (long i = 0; i < k; ++i) {
        numerator *= q_power(q, n - i) - 1;
        Integer qk;
        mpz_ui_pow_ui(qk.get_mpz_t(), q, static_cast<unsigned long>(k - i));
        denominator *= qk - 1;
    }
    Rational result = numerator / Rational(denominator);
    result.canonicalize();
    return result;
}

Rational q_int(long n, unsigned long q)
{
    check_q(q);
    Rational r = (q_power(q, n) - 1) / Rational(q - 1);
    r.canonicalize();
    return r;
}

Rational q_pochhammer(QExponent a, unsigned long n, unsigned long q)
{
    check_q(q);
    Rational r(1);
    for (unsigned long i = 0; i < n; ++i)
        r *= 1 - q_power(q, a.exponent + static_cast<long>(i));
    return r;
}

Valuation v_q(const Integer& m, unsigned long q)
{
    check_q(q);
    if (m == 0)
        return Valuation::infinite();
    Integer rest = abs(m);
    unsigned long v = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), q)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), q);
        ++v;
    }
    return Valuation::finite(v);
}

Integer binomial(const Integer& n, unsigned long m)
{
    if (n < 0)
        throw InvalidArgument("binomial: negative upper index");
    Integer r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), m);
    return r;
}

std::string to_string(const Rational& x)
{
    return x.get_str();
}

Rational parse_rational(const std::string& text)
{
    Rational r;
    if (r.set_str(text, 10) != 0)
        throw ParseError("not a rational number: '" + text + "'");
    if (r.get_den() == 0)
        throw ParseError("zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

QCalculus::QCalculus(unsigned long q) : q_(q)
{
    require_prime_power(q);
}

const Rational& QCalculus::power(long exponent)
{
    auto it = powers_.find(exponent);
    if (it == powers_.end())
        it = powers_.emplace(exponent, q_power(q_, exponent)).first;
    return it->second;
}

const Rational& QCalculus::binom(long n, long k)
{
    auto key = std::make_pair(n, k);
    auto it = binoms_.find(key);
    if (it == binoms_.end())
        it = binoms_.emplace(key, gauss_binom(n, k, q_)).first;
    return it->second;
}

Rational QCalculus::q_int(long n)
{
    Rational r = (power(n) - 1) / Rational(q_ - 1);
    r.canonicalize();
    return r;
}

Rational QCalculus::poch(long exponent, unsigned long length)
{
    Rational r(1);
    for (unsigned long i = 0; i < length; ++i)
        r *= 1 - power(exponent + static_cast<long>(i));
    return r;
}

} // namespace qsteiner
