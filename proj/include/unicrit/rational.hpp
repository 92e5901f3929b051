#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace unicrit {

// Exact rational in canonical form: gcd(|num|, den) = 1, den >= 1,
// zero is 0/1. GMP's mpq_class maintains exactly this invariant once
// canonicalized, so it is the representation; everything below keeps
// values canonical.
using Rat = mpq_class;
using Int = mpz_class;

/// Canonical rational a/b. Rejects b = 0.
Rat make_rational(const Int& a, const Int& b);

/// Parses "a/b" or "a" (decimal, optional leading minus). Rejects b = 0.
Rat parse_rational(const std::string& text);
std::optional<Rat> try_parse_rational(const std::string& text);

/// Canonical text form "a/b", with "/1" omitted.
std::string to_string(const Rat& x);
std::string to_string(const Int& n);

/// p-adic valuation of x != 0: the exponent of p in num minus den.
/// p must be prime (not re-checked here) and x nonzero.
long valuation(const Int& p, const Rat& x);

/// Valuation of a nonzero integer.
long valuation(const Int& p, const Int& n);

/// Height max(|num|, den) of a canonical rational.
Int height(const Rat& x);

inline const Int& num(const Rat& x) { return x.get_num(); }
inline const Int& den(const Rat& x) { return x.get_den(); }

} // namespace unicrit
