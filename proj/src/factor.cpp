#include "unicrit/factor.hpp"

#include "unicrit/errors.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace unicrit {

Int Factorization::value() const {
    if (sign == 0) return 0;
    Int v = sign;
    for (const auto& [p, e] : factors) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        v *= pe;
    }
    return v * unfactored;
}

namespace {

// Primes up to 10^6, built once. Read-only after init, safe to share.
const std::vector<unsigned long>& small_primes() {
    static std::vector<unsigned long> primes;
    static std::once_flag flag;
    std::call_once(flag, [] {
        const unsigned long limit = 1'000'000;
        std::vector<bool> composite(limit + 1, false);
        for (unsigned long i = 2; i * i <= limit; ++i)
            if (!composite[i])
                for (unsigned long j = i * i; j <= limit; j += i) composite[j] = true;
        for (unsigned long i = 2; i <= limit; ++i)
            if (!composite[i]) primes.push_back(i);
    });
    return primes;
}

bool strong_probable_prime(const Int& n, const Int& base) {
    // n odd, n > 2, write n-1 = 2^s * d.
    Int nm1 = n - 1;
    const auto s = mpz_scan1(nm1.get_mpz_t(), 0);
    Int d = nm1 >> s;
    Int a = base % n;
    if (a == 0) return true;
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) return true;
    for (mp_bitcnt_t r = 1; r < s; ++r) {
        x = (x * x) % n;
        if (x == nm1) return true;
        if (x == 1) return false;
    }
    return false;
}

} // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (mpz_even_p(n.get_mpz_t())) return false;

    // The first twelve primes decide primality for everything below
    // 3317044064679887385961981 (Sorenson-Webster bound).
    static const Int deterministic_bound("3317044064679887385961981");
    static const unsigned long witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (unsigned long w : witnesses) {
        if (n == w) return true;
        if (n % w == 0) return false;
        if (!strong_probable_prime(n, Int(w))) return false;
    }
    if (n < deterministic_bound) return true;

    // Above the bound: 64 extra rounds with bases generated from n, so
    // results are reproducible across runs and processes.
    gmp_randstate_t state;
    gmp_randinit_mt(state);
    Int seed = n ^ (n >> 7);
    gmp_randseed(state, seed.get_mpz_t());
    Int nm3 = n - 3;
    bool probably = true;
    for (int round = 0; round < 64 && probably; ++round) {
        Int base;
        mpz_urandomm(base.get_mpz_t(), state, nm3.get_mpz_t());
        base += 2;
        probably = strong_probable_prime(n, base);
    }
    gmp_randclear(state);
    return probably;
}

namespace {

// Brent's cycle-finding variant of Pollard rho with batched gcds.
// Returns a nontrivial factor of the odd composite n, or nullopt when
// the iteration budget runs out. Deterministic: restarts walk a fixed
// parameter sequence.
std::optional<Int> rho_brent(const Int& n, std::uint64_t& iterations_left) {
    for (unsigned long c = 1;; ++c) {
        Int y = 2, x, q = 1, g = 1, ys;
        unsigned long r = 1;
        const unsigned long batch = 128;
        while (g == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            for (unsigned long k = 0; k < r && g == 1; k += batch) {
                ys = y;
                const unsigned long count = std::min(batch, r - k);
                if (iterations_left < count) return std::nullopt;
                iterations_left -= count;
                for (unsigned long i = 0; i < count; ++i) {
                    y = (y * y + c) % n;
                    Int diff = x - y;
                    q = (q * abs(diff)) % n;
                }
                g = gcd(q, n);
            }
            r *= 2;
        }
        if (g == n) {
            // Batch overshot; replay one step at a time.
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                g = gcd(Int(abs(x - ys)), n);
            }
        }
        if (g != n) return g;
        // Cycle collapsed for this c; try the next polynomial.
    }
}

// One-stage Pollard p-1: catches factors p with p-1 smooth up to bound.
std::optional<Int> pollard_pm1(const Int& n, unsigned long bound) {
    Int a = 2;
    for (unsigned long p : small_primes()) {
        if (p > bound) break;
        unsigned long pk = p;
        while (pk <= bound / p) pk *= p;
        mpz_powm_ui(a.get_mpz_t(), a.get_mpz_t(), pk, n.get_mpz_t());
        if (a == 0) return std::nullopt;
    }
    Int g = gcd(Int(a - 1), n);
    if (g > 1 && g < n) return g;
    return std::nullopt;
}

void add_factor(std::vector<FactorEntry>& out, const Int& p, unsigned long e) {
    for (auto& entry : out)
        if (entry.prime == p) {
            entry.exponent += e;
            return;
        }
    out.push_back({p, e});
}

// Splits composite n (odd, no factors <= trial_limit, not prime) into
// certified prime entries, or leaves a cofactor when the budget dies.
void split(const Int& n, const FactorBudget& budget, std::uint64_t& iterations_left,
           std::vector<FactorEntry>& out, Int& unfactored) {
    if (n == 1) return;
    if (is_prime(n)) {
        add_factor(out, n, 1);
        return;
    }
    // rho stalls on perfect powers of a single prime; peel them first.
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
            Int root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
                std::vector<FactorEntry> base;
                split(root, budget, iterations_left, base, unfactored);
                if (unfactored != 1) {
                    // Root itself incomplete: give up on the power structure.
                    Int residue;
                    mpz_pow_ui(residue.get_mpz_t(), unfactored.get_mpz_t(), k);
                    for (const auto& [p, e] : base) add_factor(out, p, e * k);
                    unfactored = residue;
                    return;
                }
                for (const auto& [p, e] : base) add_factor(out, p, e * k);
                return;
            }
        }
    }
    if (auto g = pollard_pm1(n, budget.pm1_bound)) {
        split(*g, budget, iterations_left, out, unfactored);
        if (unfactored != 1) return;
        split(Int(n / *g), budget, iterations_left, out, unfactored);
        return;
    }
    if (auto g = rho_brent(n, iterations_left)) {
        split(*g, budget, iterations_left, out, unfactored);
        if (unfactored != 1) return;
        split(Int(n / *g), budget, iterations_left, out, unfactored);
        return;
    }
    unfactored = n;
}

} // namespace

Factorization factor(const Int& n, const FactorBudget& budget) {
    Factorization result;
    if (n == 0) {
        result.sign = 0;
        return result;
    }
    result.sign = n < 0 ? -1 : 1;
    Int m = abs(n);

    // The sieve only reaches 10^6; a larger requested limit is clamped.
    const unsigned long trial_limit = std::min(budget.trial_limit, small_primes().back());
    for (unsigned long p : small_primes()) {
        if (p > trial_limit) break;
        if (Int(p) * p > m) break;
        if (m % p == 0) {
            unsigned long e = 0;
            do {
                m /= p;
                ++e;
            } while (m % p == 0);
            result.factors.push_back({Int(p), e});
        }
    }
    if (m > 1) {
        if (Int(trial_limit) * trial_limit > m || is_prime(m)) {
            // Survived trial division up to sqrt(m), so m is prime.
            add_factor(result.factors, m, 1);
        } else {
            std::uint64_t iterations_left = budget.rho_iterations;
            Int unfactored = 1;
            split(m, budget, iterations_left, result.factors, unfactored);
            if (unfactored != 1) {
                result.complete = false;
                result.unfactored = unfactored;
            }
        }
    }
    std::sort(result.factors.begin(), result.factors.end(),
              [](const FactorEntry& a, const FactorEntry& b) { return a.prime < b.prime; });
    return result;
}

std::vector<Int> exact_divisors(const Factorization& f) {
    if (f.sign == 0) throw std::invalid_argument("exact_divisors: zero has no divisor list");
    if (!f.complete)
        throw incomplete_factorization("exact_divisors: incomplete factorization");
    if (f.factors.size() > 22)
        throw budget_exceeded("exact_divisors: too many distinct primes");

    std::vector<Int> out;
    out.reserve(std::size_t(2) << f.factors.size());
    const std::size_t subsets = std::size_t(1) << f.factors.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        Int v = 1;
        for (std::size_t i = 0; i < f.factors.size(); ++i)
            if (mask & (std::size_t(1) << i)) {
                Int pe;
                mpz_pow_ui(pe.get_mpz_t(), f.factors[i].prime.get_mpz_t(), f.factors[i].exponent);
                v *= pe;
            }
        out.push_back(v);
        out.push_back(-v);
    }
    std::sort(out.begin(), out.end(), [](const Int& a, const Int& b) {
        Int aa = abs(a), ab = abs(b);
        if (aa != ab) return aa < ab;
        return a > b; // positive first
    });
    return out;
}

std::optional<Int> perfect_root(const Int& n, unsigned long k) {
    if (n < 1) throw std::invalid_argument("perfect_root: n must be positive");
    if (k < 2) throw std::invalid_argument("perfect_root: k must be >= 2");
    Int root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) return root;
    return std::nullopt;
}

bool is_pth_power_rational(const Rat& x, unsigned long p) {
    if (p < 2) throw std::invalid_argument("is_pth_power_rational: p must be >= 2");
    if (x == 0) return true;
    if (x < 0 && p % 2 == 0) return false;
    Int n = abs(x.get_num());
    const Int& d = x.get_den();
    return perfect_root(n, p).has_value() && (d == 1 || perfect_root(d, p).has_value());
}

} // namespace unicrit
