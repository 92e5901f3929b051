#pragma once

#include "unicrit/factor.hpp"
#include "unicrit/rational.hpp"

#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace unicrit {

// Lower convex hull of the points (i, v_p(a_i)) over the nonzero
// coefficients of a polynomial. Vertices are minimal: slopes strictly
// increase; the lattice-point subdivision is available as a view.
struct NewtonPolygon {
    Int p;
    std::vector<std::pair<long, long>> points;   // (index, valuation), nonzero coeffs only
    std::vector<std::pair<long, long>> vertices; // lower hull, left to right

    /// Vertices plus every lattice point lying on a hull edge.
    std::vector<std::pair<long, long>> lattice_vertices() const;
    /// Hull edges as (slope, horizontal length), slopes increasing.
    std::vector<std::pair<Rat, long>> edges() const;
};

// Witness that f = x^d + c1/c2 is stable: p | c1 with
// e = v_p(c1) coprime to d.
struct StabilityCertificate {
    Int p;
    unsigned long e = 0;
};

struct ReducibleWitness {
    std::vector<Int> factor; // degree-indexed, divides the input exactly
};

enum class OracleOutcome { irreducible, reducible, unknown };

struct OracleResult {
    OracleOutcome outcome = OracleOutcome::unknown;
    std::optional<ReducibleWitness> witness; // set when reducible
};

// Effort knobs for the irreducibility oracle.
struct OracleBudget {
    unsigned degree_cap = 16;
    unsigned modular_primes = 5;
    std::uint64_t divisor_tuples = 2'000'000; // interpolation attempts per run
    FactorBudget factor_budget{};
};

/// Newton polygon of a degree-indexed integer coefficient vector at p.
/// Needs at least two nonzero coefficients.
NewtonPolygon newton_polygon(const std::vector<Int>& coeffs, const Int& p);

/// True iff the hull is the single segment (0, m) -> (k, 0) with m > 0
/// and gcd(k, m) = 1; this certifies irreducibility over Q.
bool eisenstein_dumas(const std::vector<Int>& coeffs, const Int& p);

/// Irreducibility of x^d + c itself over Q: for every prime p | d, -c
/// must not be a p-th power, and when 4 | d, c must not be 4 times a
/// 4th power. Requires c != 0.
bool base_irreducibility(unsigned long d, const Rat& c);

/// Smallest prime p | c1 with gcd(v_p(c1), d) = 1, if any. Presence
/// certifies that every iterate of x^d + c is irreducible over Q;
/// absence decides nothing.
std::optional<StabilityCertificate> stability_certificate(unsigned long d, const Rat& c,
                                                          const FactorBudget& budget = {});

/// Independent irreducibility decision for an integer polynomial:
/// factor-degree patterns modulo several primes, then a bounded
/// Kronecker-style search for an explicit factor. A reducible verdict
/// always carries a verified witness.
OracleResult irreducibility_oracle(const std::vector<Int>& coeffs, const OracleBudget& budget = {});

} // namespace unicrit
