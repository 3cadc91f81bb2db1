#pragma once

// Exact q-analog arithmetic evaluated at a concrete prime power q.
//
// Every scalar is an arbitrary-precision rational (GMP mpq_class, always kept
// in lowest terms with a positive denominator). Integrality of results such
// as [n k]_q for n >= 0 is a postcondition callers may assert, not a type
// distinction.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>

namespace qsteiner {

using Integer = mpz_class;
using Rational = mpq_class;

/// The value q^exponent; parameters of q-hypergeometric series are always
/// integer powers of q here.
struct QExponent {
    long exponent = 0;
};

/// q-adic valuation: index of the lowest nonzero base-q digit, infinite for 0.
class Valuation {
public:
    static Valuation infinite() { return Valuation{}; }
    static Valuation finite(unsigned long v) { return Valuation{v}; }

    bool is_infinite() const { return !value_.has_value(); }
    unsigned long value() const { return value_.value(); }

    friend bool operator==(const Valuation&, const Valuation&) = default;

private:
    Valuation() = default;
    explicit Valuation(unsigned long v) : value_(v) {}
    std::optional<unsigned long> value_;
};

/// Trial factorization; q < 2^20 is enough for everything the library does.
/// On success writes the characteristic and extension degree.
bool is_prime_power(unsigned long q, unsigned long* prime = nullptr,
                    unsigned* degree = nullptr);

/// Throws InvalidArgument unless q is a prime power below 2^20.
void require_prime_power(unsigned long q);

/// C(x, 2) = x(x-1)/2 as a polynomial in x, so negative x is allowed.
constexpr long binom2(long x) { return x * (x - 1) / 2; }

Rational q_power(unsigned long q, long exponent);

/// Gaussian binomial [n k]_q through the k-fold product formula.
/// Total in (n, k): 1 for k = 0, 0 for k < 0, rational for n < 0.
Rational gauss_binom(long n, long k, unsigned long q);

/// [n]_q = (q^n - 1)/(q - 1).
Rational q_int(long n, unsigned long q);

/// (q^a; q)_n = prod_{i<n} (1 - q^{a+i}).
Rational q_pochhammer(QExponent a, unsigned long n, unsigned long q);

/// Throws InvalidArgument unless q is a prime power, like every function here.
Valuation v_q(const Integer& m, unsigned long q);

/// Ordinary binomial coefficient C(n, m) for big n.
Integer binomial(const Integer& n, unsigned long m);

/// Fraction string "num/den", or just "num" when the value is integral.
std::string to_string(const Rational& x);

/// Parses "num", "num/den" or "-num/den".
Rational parse_rational(const std::string& text);

/// Memoising evaluator bound to one q. Not thread-safe; give each worker its
/// own instance. Returned references stay valid for the lifetime of the
/// object.
class QCalculus {
public:
    explicit QCalculus(unsigned long q);

    unsigned long q() const { return q_; }

    const Rational& power(long exponent);
    const Rational& binom(long n, long k);
    Rational q_int(long n);
    Rational poch(long exponent, unsigned long length);

    /// (-1)^e as +1/-1.
    static int sign(long e) { return (e % 2 == 0) ? 1 : -1; }

private:
    struct PairHash {
        std::size_t operator()(const std::pair<long, long>& p) const noexcept
        {
            return std::hash<long>()(p.first) * 1000003u ^ std::hash<long>()(p.second);
        }
    };

    unsigned long q_;
    std::unordered_map<long, Rational> powers_;
    std::unordered_map<std::pair<long, long>, Rational, PairHash> binoms_;
};

} // namespace qsteiner
