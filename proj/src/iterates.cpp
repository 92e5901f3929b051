#include "unicrit/iterates.hpp"

#include "unicrit/errors.hpp"

#include <stdexcept>

namespace unicrit {

namespace {

template <typename T>
std::vector<T> convolve(const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> out(a.size() + b.size() - 1, T(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

template <typename T>
std::vector<T> poly_pow(std::vector<T> base, unsigned long e) {
    std::vector<T> out{T(1)};
    while (e > 0) {
        if (e & 1) out = convolve(out, base);
        e >>= 1;
        if (e > 0) base = convolve(base, base);
    }
    return out;
}

Int pow_int(const Int& base, unsigned long e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

// d^(n-1) as size_t, guarded.
std::size_t top_index(unsigned long d, unsigned long n, const SizeGuard& guard) {
    if (d < 2) throw std::invalid_argument("iterates: d must be >= 2");
    if (n < 1) throw std::invalid_argument("iterates: n must be >= 1");
    std::size_t top = 1;
    for (unsigned long k = 1; k < n; ++k) {
        if (top > guard.max_coeff_slots / d)
            throw size_guard_exceeded("iterates: d^(n-1) exceeds the size guard");
        top *= d;
    }
    if (top > guard.max_coeff_slots)
        throw size_guard_exceeded("iterates: d^(n-1) exceeds the size guard");
    return top;
}

} // namespace

std::size_t iterate_slots(unsigned long d, unsigned long n, const SizeGuard& guard) {
    return top_index(d, n, guard) + 1;
}

std::vector<Int> g_poly(unsigned long d, unsigned long n, const SizeGuard& guard) {
    if (n < 2) throw std::invalid_argument("g_poly: n must be >= 2");
    top_index(d, n, guard);
    std::vector<Int> g{1}; // g_2
    for (unsigned long k = 2; k < n; ++k) {
        // 1 + x^(d-1) * g_k, then the d-th power.
        std::vector<Int> base(d - 1 + g.size(), Int(0));
        base[0] = 1;
        for (std::size_t i = 0; i < g.size(); ++i) base[d - 1 + i] += g[i];
        g = poly_pow(base, d);
    }
    return g;
}

IterateTable iterate_coeffs(unsigned long d, const Rat& c, unsigned long n,
                            const SizeGuard& guard) {
    top_index(d, n, guard);
    IterateTable table{d, n, c, {c, Rat(1)}};
    for (unsigned long k = 1; k < n; ++k) {
        table.coeffs = poly_pow(table.coeffs, d);
        table.coeffs[0] += c;
    }
    return table;
}

ClearedIterate cleared_iterate(unsigned long d, const Int& c1, const Int& c2, unsigned long n,
                               const SizeGuard& guard) {
    if (c2 < 1) throw std::invalid_argument("cleared_iterate: c2 must be positive");
    if (gcd(c1, c2) != 1) throw std::invalid_argument("cleared_iterate: c1, c2 not coprime");
    top_index(d, n, guard);
    ClearedIterate h{d, n, c1, c2, {c1, c2}};
    Int d_pow = d; // d^k while building step k -> k+1
    for (unsigned long k = 1; k < n; ++k) {
        h.F = poly_pow(h.F, d);
        // c2^(d^n) f^(n+1) = (c2^(d^(n-1)) f^n)^d + c1 * c2^(d^n - 1)
        Int addend;
        mpz_pow_ui(addend.get_mpz_t(), c2.get_mpz_t(), d_pow.get_ui() - 1);
        h.F[0] += c1 * addend;
        d_pow *= d;
    }
    return h;
}

std::vector<Int> ClearedIterate::dense() const {
    std::vector<Int> out((F.size() - 1) * d + 1, Int(0));
    for (std::size_t i = 0; i < F.size(); ++i) out[i * d] = F[i];
    return out;
}

std::vector<Rat> orbit_eval(unsigned long d, const Rat& c, const Rat& u, unsigned long steps) {
    std::vector<Rat> orbit{u};
    orbit.reserve(steps + 1);
    Rat x = u;
    for (unsigned long k = 0; k < steps; ++k) {
        Rat xp = x;
        for (unsigned long i = 1; i < d; ++i) xp *= x;
        x = xp + c;
        orbit.push_back(x);
    }
    return orbit;
}

CriticalOrbit critical_orbit(unsigned long d, const Int& c1, const Int& c2, unsigned long count,
                             const FactorBudget& budget, const SizeGuard& guard) {
    if (d < 2) throw std::invalid_argument("critical_orbit: d must be >= 2");
    if (count < 1) throw std::invalid_argument("critical_orbit: need at least one term");
    if (c2 < 1) throw std::invalid_argument("critical_orbit: c2 must be positive");
    if (gcd(c1, c2) != 1) throw std::invalid_argument("critical_orbit: c1, c2 not coprime");

    CriticalOrbit orbit{d, c1, c2, {}, {}};
    Int term = c1; // F_0^1
    // F_0^(k+1) = (F_0^k)^d + c1 * c2^(d^k - 1). The c2 power obeys
    // c2^(d^(k+1) - 1) = (c2^(d^k - 1))^d * c2^(d-1).
    const Int c2_step = pow_int(c2, d - 1);
    Int c2_pow = c2_step; // c2^(d^k - 1), starting at k = 1
    for (unsigned long k = 1; k <= count; ++k) {
        orbit.terms.push_back(term);
        if (k == count) break;
        if (mpz_sizeinbase(term.get_mpz_t(), 2) * d > guard.max_term_bits ||
            mpz_sizeinbase(c2_pow.get_mpz_t(), 2) * d > guard.max_term_bits)
            throw size_guard_exceeded("critical_orbit: term bit length exceeds the size guard");
        term = pow_int(term, d) + c1 * c2_pow;
        c2_pow = pow_int(c2_pow, d) * c2_step;
    }
    for (const Int& t : orbit.terms)
        orbit.factorizations.push_back(t == 0 ? std::nullopt
                                              : std::optional<Factorization>(factor(t, budget)));
    return orbit;
}

} // namespace unicrit
