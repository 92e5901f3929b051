#pragma once

#include "unicrit/dynamics.hpp"

#include <string>
#include <vector>

namespace unicrit {

enum class DenominatorVariant {
    reduced, // gcd(numerator, denominator) = 1 inside the d-th-power count
    pairs    // every numerator per d-th-power denominator
};

// Exact height counts: sN = #{reduced a/b, h <= N}, sdN = the
// d-th-power-denominator count under the chosen variant, their ratio,
// and the predicted asymptotic pi^2 / (6 N^((d-1)/d)).
struct HeightCounts {
    Int N;
    unsigned long d = 2;
    DenominatorVariant variant = DenominatorVariant::reduced;
    Int sN;
    Int sdN;
    Rat ratio;
    double predicted = 0.0;
};

struct CensusEntry {
    Rat c;
    unsigned long n = 1;
    std::vector<PeriodicPointRecord> records;
};

struct CensusFailure {
    Rat c;
    unsigned long n = 1;
    std::string reason;
};

// Full sweep report. pN equals sN by definition; pdN counts the c
// values with at least one cycle found for some n <= n_max.
struct CensusReport {
    unsigned long d = 2;
    Int N;
    unsigned long n_max = 1;
    Int sN;
    Int sdN_reduced;
    Int sdN_pairs;
    Int pN;
    Int pdN = 0;
    double predicted = 0.0;
    std::vector<CensusEntry> entries;     // nonempty searches, sorted by (h(c), c, n)
    std::vector<CensusFailure> failures;  // per-c failures, sweep not aborted
};

struct CensusOptions {
    SearchOptions search{};
    unsigned long threads = 0;              // 0: hardware concurrency
    std::uint64_t volume_cap = 50'000'000;  // refuses oversized sweeps
};

/// Exact sieve-assisted height counts.
HeightCounts count_heights(const Int& N, unsigned long d, DenominatorVariant variant);

/// Runs find_periodic for every gate-passing reduced c with h(c) <= N
/// and every period n <= n_max. Per-c failures are collected, not
/// rethrown. Throws budget_exceeded when the estimated volume is over
/// the cap.
CensusReport periodic_census(unsigned long d, const Int& N, unsigned long n_max,
                             const CensusOptions& opts = {});

} // namespace unicrit
