#pragma once

#include "unicrit/factor.hpp"
#include "unicrit/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace unicrit {

// Guards for iterate computation: slot count of a coefficient table and
// bit length of a critical-orbit term.
struct SizeGuard {
    std::size_t max_coeff_slots = std::size_t(1) << 20;
    std::size_t max_term_bits = std::size_t(1) << 24;
};

// Coefficient table of the n-th iterate of x^d + c. Only exponents that
// are multiples of d occur; coeffs[i] is the coefficient of x^(i*d),
// with the top index d^(n-1) carrying x^(d^n).
struct IterateTable {
    unsigned long d = 2;
    unsigned long n = 1;
    Rat c;
    std::vector<Rat> coeffs;
};

// Integer form: F[i] = c2^(d^(n-1)) * coeffs[i] for c = c1/c2 in lowest
// terms. F[top] = c2^(d^(n-1)) and c1*c2^i divides F[i] below the top.
struct ClearedIterate {
    unsigned long d = 2;
    unsigned long n = 1;
    Int c1;
    Int c2 = 1;
    std::vector<Int> F;

    /// Dense degree-indexed coefficient vector of length d^n + 1.
    std::vector<Int> dense() const;
};

// The cleared orbit of 0: terms[k-1] = c2^(d^(k-1)) * f^k(0), an
// integer for every k. Zero terms mean 0 is periodic; they carry no
// factorization.
struct CriticalOrbit {
    unsigned long d = 2;
    Int c1;
    Int c2 = 1;
    std::vector<Int> terms;
    std::vector<std::optional<Factorization>> factorizations; // nullopt for zero terms
};

/// Coefficients of g_n in f^n(0) = c + c^d g_n(c), built by the
/// recursion g_2 = 1, g_{n+1}(x) = (1 + x^(d-1) g_n(x))^d. Degree is
/// exactly d^(n-1) - d. Requires n >= 2.
std::vector<Int> g_poly(unsigned long d, unsigned long n, const SizeGuard& guard = {});

/// Exact coefficient table of f^n for f = x^d + c.
IterateTable iterate_coeffs(unsigned long d, const Rat& c, unsigned long n,
                            const SizeGuard& guard = {});

/// Integer-cleared iterate for c = c1/c2, gcd(c1, c2) = 1, c2 >= 1.
ClearedIterate cleared_iterate(unsigned long d, const Int& c1, const Int& c2, unsigned long n,
                               const SizeGuard& guard = {});

/// [u, f(u), ..., f^steps(u)] computed exactly.
std::vector<Rat> orbit_eval(unsigned long d, const Rat& c, const Rat& u, unsigned long steps);

/// Cleared critical orbit with factorizations of the nonzero terms.
/// Incomplete factorizations are carried in the result per term.
CriticalOrbit critical_orbit(unsigned long d, const Int& c1, const Int& c2, unsigned long count,
                             const FactorBudget& budget = {}, const SizeGuard& guard = {});

/// Slot count d^(n-1) + 1 checked against the guard.
std::size_t iterate_slots(unsigned long d, unsigned long n, const SizeGuard& guard);

} // namespace unicrit
