#pragma once

#include "unicrit/iterates.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace unicrit {

enum class CheckStatus { pass, fail, vacuous };

// Named structural verifications; "vacuous" marks statements the
// underlying theorems do not cover (period 1, c1 = 0, zero numerator).
using CheckMap = std::map<std::string, CheckStatus>;

// One cycle of rational points of certified exact period n. All points
// share the denominator u2; the cycle is rotated so the smallest
// numerator leads and u == orbit[0].
struct PeriodicPointRecord {
    Rat u;
    unsigned long n = 1;
    std::vector<Rat> orbit;
    std::vector<Int> numerators;
    Int u2 = 1;
    CheckMap checks;
};

struct ExclusionTraceRow {
    Int p;
    Int gcd_p;         // gcd(p, d^n - 1)
    Int gcd_p_minus_1; // gcd(p - 1, d^n - 1)
    bool applicable = false;
    bool triggered = false;
};

// Outcome of the period-exclusion filter. "impossible" certifies that
// no rational point of exact period n exists; "inconclusive" decides
// nothing. The filter only applies for n >= 2.
struct ExclusionVerdict {
    bool impossible = false;
    std::optional<Int> witness_prime;
    bool filter_applies = true;     // false for n = 1
    bool modulus_prime = false;     // d^n - 1 prime
    bool incomplete_warning = false;
    std::vector<ExclusionTraceRow> trace;
};

struct SearchOptions {
    bool use_exclusion_prefilter = true;
    FactorBudget factor_budget{};
    SizeGuard size_guard{};
};

/// u2 with c2 = u2^d if c2 is a perfect d-th power, else nothing — and
/// then no rational periodic point of any period exists.
std::optional<Int> denominator_gate(unsigned long d, const Rat& c);

/// Complete search for the rational points of exact period n, grouped
/// into cycles, sorted by leading point. Throws incomplete_factorization
/// when the critical-orbit term cannot be fully factored (completeness
/// would be lost).
std::vector<PeriodicPointRecord> find_periodic(unsigned long d, const Rat& c, unsigned long n,
                                               const SearchOptions& opts = {});

/// Least n <= n_cap with f^n(u) = u, if any.
std::optional<unsigned long> exact_period(unsigned long d, const Rat& c, const Rat& u,
                                          unsigned long n_cap);

/// Integer orbit of u1 under x -> (x^d + c1) / u2^(d-1); every division
/// must be exact, otherwise the point was not periodic.
std::vector<Int> conjugated_orbit(unsigned long d, const Int& c1, const Int& u2, const Int& u1,
                                  unsigned long steps);

/// Evaluates the named structural verifications on a found cycle.
CheckMap structural_checks(const PeriodicPointRecord& rec, unsigned long d, const Rat& c,
                           const FactorBudget& budget = {});

/// Necessary-condition filter on the primes of c1 for exact period n.
ExclusionVerdict exclusion_filter(unsigned long d, const Int& c1, unsigned long n,
                                  const FactorBudget& budget = {});

const char* to_string(CheckStatus s);

} // namespace unicrit
