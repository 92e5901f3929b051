#pragma once

#include "unicrit/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace unicrit {

// Effort budget for factor(). Trial division runs over all primes up to
// trial_limit; remaining composites go to a Pollard p-1 stage and then
// Brent's rho with a global iteration cap. Exceeding the cap yields an
// incomplete result, never a wrong one.
struct FactorBudget {
    unsigned long trial_limit = 1'000'000;
    std::uint64_t rho_iterations = 400'000'000;
    unsigned long pm1_bound = 100'000;
};

struct FactorEntry {
    Int prime;
    unsigned long exponent;
    bool operator==(const FactorEntry&) const = default;
};

// sign * prod(prime^exponent) * unfactored reproduces the input.
// Primes are strictly increasing and individually certified;
// unfactored > 1 only when complete is false.
struct Factorization {
    int sign = 0; // -1, 0, +1
    std::vector<FactorEntry> factors;
    bool complete = true;
    Int unfactored = 1;

    Int value() const;
    bool is_unit() const { return sign != 0 && factors.empty() && complete; }
};

/// Strong-probable-prime test: deterministic witness set below
/// 3317044064679887385961981, otherwise 64 rounds with bases derived
/// from n itself (reproducible; error probability <= 4^-64).
bool is_prime(const Int& n);

/// Factors n. Incompleteness within the budget is reported in the
/// result, never silently dropped.
Factorization factor(const Int& n, const FactorBudget& budget = {});

/// All signed exact divisors of a complete factorization: every value
/// +-prod_{p in S} p^(v_p) over subsets S of the prime support,
/// sorted by absolute value with the positive one first. Rejects
/// incomplete factorizations and zero.
std::vector<Int> exact_divisors(const Factorization& f);

/// Exact k-th root of n >= 1 if it exists.
std::optional<Int> perfect_root(const Int& n, unsigned long k);

/// True iff x = y^p for some rational y (p >= 2).
bool is_pth_power_rational(const Rat& x, unsigned long p);

} // namespace unicrit
