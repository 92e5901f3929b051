#include "unicrit/primes_orbit.hpp"

#include "unicrit/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace unicrit {

PrimitiveReport primitive_divisors(const CriticalOrbit& orbit) {
    PrimitiveReport report;
    std::set<Int> seen;
    for (std::size_t k = 0; k < orbit.terms.size(); ++k) {
        if (orbit.terms[k] == 0) {
            report.truncated_at = k + 1;
            break;
        }
        const auto& fac = orbit.factorizations[k];
        if (!fac || !fac->complete)
            throw incomplete_factorization("primitive_divisors: term not fully factored");
        std::vector<Int> fresh;
        for (const auto& [p, e] : fac->factors)
            if (!seen.count(p)) fresh.push_back(p);
        for (const Int& p : fresh) seen.insert(p);
        report.primitive.push_back(std::move(fresh));
    }
    return report;
}

bool divisibility_check(const CriticalOrbit& orbit) {
    const auto& t = orbit.terms;
    for (std::size_t m = 1; m <= t.size(); ++m)
        for (std::size_t k = 2 * m; k <= t.size(); k += m) {
            const Int& a = t[m - 1];
            const Int& b = t[k - 1];
            if (a == 0) {
                if (b != 0) return false;
            } else if (b % a != 0) {
                return false;
            }
        }
    return true;
}

PeriodicPrimitiveReport periodic_primitive_check(const PeriodicPointRecord& rec,
                                                 const CriticalOrbit& orbit,
                                                 const FactorBudget& budget) {
    PeriodicPrimitiveReport report;
    const unsigned long n = rec.n;
    if (n < 2) return report; // the statements start at period 2
    if (orbit.terms.size() < n)
        throw std::invalid_argument("periodic_primitive_check: orbit must cover indices 1..n");
    report.applicable = true;

    for (const Int& u1 : rec.numerators) {
        if (u1 == 0) continue;
        Factorization fu = factor(u1, budget);
        if (!fu.complete)
            throw incomplete_factorization("periodic_primitive_check: numerator not factored");
        for (const auto& [p, e] : fu.factors)
            if (std::find(report.numerator_primes.begin(), report.numerator_primes.end(), p) ==
                report.numerator_primes.end())
                report.numerator_primes.push_back(p);
    }
    std::sort(report.numerator_primes.begin(), report.numerator_primes.end());

    for (std::size_t k = 0; k < n; ++k)
        if (orbit.terms[k] == 0) report.truncated = true;
    if (report.truncated) return report; // every prime divides 0: nothing to certify

    PrimitiveReport prim = primitive_divisors(orbit);
    const auto& at_n = prim.primitive[n - 1];
    report.primitive_count = at_n.size();

    if (report.numerator_primes.empty()) {
        report.numerator_primes_primitive = CheckStatus::vacuous;
    } else {
        bool ok = true;
        for (const Int& p : report.numerator_primes)
            if (!std::binary_search(at_n.begin(), at_n.end(), p)) ok = false;
        report.numerator_primes_primitive = ok ? CheckStatus::pass : CheckStatus::fail;
    }

    report.count_bound =
        (report.primitive_count + 1 >= n) ? CheckStatus::pass : CheckStatus::fail;

    // A prime dividing terms m < k also divides the term at k - m.
    bool consistent = true;
    std::vector<std::set<Int>> primes_at(n);
    for (std::size_t k = 0; k < n; ++k)
        for (const auto& [p, e] : orbit.factorizations[k]->factors) primes_at[k].insert(p);
    for (std::size_t m = 0; m < n && consistent; ++m)
        for (std::size_t k = m + 1; k < n && consistent; ++k)
            for (const Int& p : primes_at[m])
                if (primes_at[k].count(p) && !primes_at[k - m - 1].count(p)) {
                    consistent = false;
                    break;
                }
    report.orbit_consistency = consistent ? CheckStatus::pass : CheckStatus::fail;
    return report;
}

bool ratio_gcd_property(const Int& a, const Int& b, unsigned long k, unsigned long l) {
    if (a == b) throw std::invalid_argument("ratio_gcd_property: a and b must differ");
    if (gcd(a, b) != 1) throw std::invalid_argument("ratio_gcd_property: a, b must be coprime");
    auto term = [&](unsigned long m) {
        Int pa, pb;
        mpz_pow_ui(pa.get_mpz_t(), a.get_mpz_t(), m);
        mpz_pow_ui(pb.get_mpz_t(), b.get_mpz_t(), m);
        return Int((pa - pb) / (a - b));
    };
    Int g = gcd(term(k), term(l));
    return abs(g) == abs(term(std::gcd(k, l)));
}

} // namespace unicrit
