#pragma once

// Exact checks of the q-series identities behind the eigenvalue derivation.
// Each check evaluates both sides term by term from gauss_binom, q powers and
// q-Pochhammer symbols; the two sides never share intermediate terms.

#include "qsteiner/exactq.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qsteiner {

struct IdentityReport {
    std::string name;
    /// Parameters in the order they appear in the identity's signature.
    std::vector<std::pair<std::string, Rational>> parameters;
    Rational lhs;
    Rational rhs;
    /// Second right-hand side for identities stated with two forms.
    std::optional<Rational> alt_rhs;
    bool equal = false;
    /// Whether equality is the expected outcome for these parameters.
    bool expected_equal = true;

    bool passed() const { return equal == expected_equal; }
};

/// Terminating 3phi2 with all parameters integer powers of q. Throws
/// InvalidArgument when no upper exponent is <= 0, VanishingDenominator when a
/// lower exponent -j has 0 <= j < m.
Rational eval_3phi2(const std::array<QExponent, 3>& upper, const std::array<QExponent, 2>& lower,
                    QExponent z, unsigned long q);

/// Throws VanishingDenominator unless (c;q)_n, (d;q)_n and
/// (q^{c+d-a-b};q)_n are all nonzero.
IdentityReport check_transf32(long n, QExponent a, QExponent b, QExponent c, QExponent d,
                              unsigned long q);

/// Reports for every Pochhammer relation whose index range admits (n, k):
/// qbin_only_poch (0<=k<=n), qbin_only_poch_sum (n>=0), qbin_poch (k>=0),
/// poch_diff (0<=k<=n), poch_sum (n,k>=0) and upper_negation (k>=0).
std::vector<IdentityReport> check_poch_suite(long n, long k, unsigned long q);

IdentityReport check_q_binomial_theorem(long n, const Rational& x, const Rational& y,
                                        unsigned long q);

/// rhs holds the first closed form and alt_rhs the second; equal requires both.
IdentityReport check_kurihara(long x, long y, long h, long p, unsigned long q);

IdentityReport check_lv_wang(long x, long a, unsigned long q);

IdentityReport check_identity1(long n, long r, long k, long u, long i, unsigned long q);
IdentityReport check_identity2(long n, long r, long k, long i, unsigned long q);
IdentityReport check_identity3(long n, long r, long k, long t, unsigned long q);
IdentityReport check_threesums1(long n, long k, long r, long t, unsigned long q);
IdentityReport check_threesums2(long n, long k, long r, long t, unsigned long q);

/// The alternating sum that controls the vanishing of mu_r. expected_equal is
/// set for 1 <= r <= t; both values are reported either way.
IdentityReport check_mu_zero_identity(long n, long k, long t, long r, unsigned long q);

/// v_q of the alternating sum above against C(t, 2).
struct ValuationReport {
    long n, k, t, r;
    unsigned long q;
    Rational sum;
    Valuation valuation;
    long expected;
    bool equal;
};
ValuationReport check_mu_zero_valuation(long n, long k, long t, long r, unsigned long q);

struct SweepConfig {
    std::vector<unsigned long> qs{2, 3, 4, 5, 7, 8, 9};
    long max_n = 10;       // 0 yields an empty sweep
    long max_u = 4;        // bound for u and i in identity1/identity2
    long min_xy = -3;      // lower bound for x, y in kurihara and lv_wang
    long max_hp = 4;       // bound for p in kurihara
    long transf_max_n = 4;
    long transf_min_exp = -2;
    long transf_max_exp = 3;
};

/// One line of sweep output: a finished report or a skipped tuple.
struct SweepRow {
    const IdentityReport* report = nullptr;
    const ValuationReport* valuation = nullptr;
    std::string skipped_name;
    std::vector<std::pair<std::string, Rational>> skipped_parameters;
    std::string skip_reason;
};

struct SweepTally {
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
};

struct SweepSummary {
    std::map<std::string, SweepTally> per_identity;
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
};

/// Runs every check over the grid in a fixed tuple order and hands each row
/// to `sink` (may be empty) as it is produced.
SweepSummary run_identity_sweep(const SweepConfig& config,
                                const std::function<void(const SweepRow&)>& sink);

} // namespace qsteiner
