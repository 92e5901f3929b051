#pragma once

#include "unicrit/dynamics.hpp"
#include "unicrit/iterates.hpp"

#include <optional>
#include <vector>

namespace unicrit {

// Per-term primitive prime sets of a critical orbit: p is primitive at
// index n iff p divides the n-th term but none before it. A zero term
// truncates the analysis (every prime divides 0).
struct PrimitiveReport {
    std::vector<std::vector<Int>> primitive; // primitive[k] for term index k+1
    std::optional<std::size_t> truncated_at; // 1-based index of the first zero term
};

// Verification of the period-n consequences on the critical orbit:
// (a) numerator primes are primitive at index n, (b) at least n-1
// primitive primes at index n, (c) a prime dividing two terms divides
// the difference-index term.
struct PeriodicPrimitiveReport {
    bool applicable = false; // requires exact period n >= 2
    bool truncated = false;  // zero orbit term at or before n
    CheckStatus numerator_primes_primitive = CheckStatus::vacuous;
    CheckStatus count_bound = CheckStatus::vacuous;
    CheckStatus orbit_consistency = CheckStatus::vacuous;
    std::size_t primitive_count = 0;
    std::vector<Int> numerator_primes;
};

/// Primitive prime sets for every term of the orbit. Throws on an
/// incompletely factored nonzero term before the truncation point.
PrimitiveReport primitive_divisors(const CriticalOrbit& orbit);

/// True iff terms[m-1] | terms[k-1] whenever m | k, with 0 | x only
/// for x = 0.
bool divisibility_check(const CriticalOrbit& orbit);

/// Checks the period-n primitive-divisor consequences for a found
/// cycle against the critical orbit of the same map.
PeriodicPrimitiveReport periodic_primitive_check(const PeriodicPointRecord& rec,
                                                 const CriticalOrbit& orbit,
                                                 const FactorBudget& budget = {});

/// gcd((a^k - b^k)/(a - b), (a^l - b^l)/(a - b)) equals the term at
/// gcd(k, l); exposed as a testable property. Requires a != b coprime.
bool ratio_gcd_property(const Int& a, const Int& b, unsigned long k, unsigned long l);

} // namespace unicrit
