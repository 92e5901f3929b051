#include "unicrit/dynamics.hpp"

#include "unicrit/errors.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace unicrit {

namespace {

Int pow_int(const Int& base, unsigned long e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

// d^n - 1, the exponent governing the numerator divisibility filters.
Int power_modulus(unsigned long d, unsigned long n) { return pow_int(Int(d), n) - 1; }

Rat apply_map(unsigned long d, const Rat& c, const Rat& x) {
    Rat xp = x;
    for (unsigned long i = 1; i < d; ++i) xp *= x;
    return xp + c;
}

// Once |x| >= |c| + 1 and |x| > 1 the orbit strictly grows, so x can
// never be periodic.
bool escapes(const Rat& c, const Rat& x) {
    Rat ax = abs(x);
    return ax > 1 && ax >= abs(c) + 1;
}

// c1 | u1^M - u2^M, evaluated modulo |c1|.
bool divides_power_diff(const Int& c1, const Int& u1, const Int& u2, const Int& M) {
    Int modulus = abs(c1);
    if (modulus <= 1) return true;
    Int a, b, base;
    base = u1 % modulus;
    if (base < 0) base += modulus;
    mpz_powm(a.get_mpz_t(), base.get_mpz_t(), M.get_mpz_t(), modulus.get_mpz_t());
    base = u2 % modulus;
    if (base < 0) base += modulus;
    mpz_powm(b.get_mpz_t(), base.get_mpz_t(), M.get_mpz_t(), modulus.get_mpz_t());
    return a == b;
}

} // namespace

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        default: return "vacuous";
    }
}

std::optional<Int> denominator_gate(unsigned long d, const Rat& c) {
    const Int& c2 = den(c);
    if (c2 == 1) return Int(1);
    return perfect_root(c2, d);
}

std::optional<unsigned long> exact_period(unsigned long d, const Rat& c, const Rat& u,
                                          unsigned long n_cap) {
    if (n_cap < 1) throw std::invalid_argument("exact_period: n_cap must be >= 1");
    Rat x = u;
    std::set<Rat> seen;
    for (unsigned long k = 1; k <= n_cap; ++k) {
        if (escapes(c, x)) return std::nullopt;
        x = apply_map(d, c, x);
        if (x == u) return k;
        if (!seen.insert(x).second) return std::nullopt; // entered a cycle avoiding u
    }
    return std::nullopt;
}

std::vector<Int> conjugated_orbit(unsigned long d, const Int& c1, const Int& u2, const Int& u1,
                                  unsigned long steps) {
    if (u2 < 1) throw std::invalid_argument("conjugated_orbit: u2 must be positive");
    const Int scale = pow_int(u2, d - 1);
    std::vector<Int> orbit{u1};
    Int x = u1;
    for (unsigned long k = 0; k < steps; ++k) {
        Int t = pow_int(x, d) + c1;
        if (t % scale != 0)
            throw std::invalid_argument("conjugated_orbit: non-exact division; point not periodic");
        x = t / scale;
        orbit.push_back(x);
    }
    return orbit;
}

ExclusionVerdict exclusion_filter(unsigned long d, const Int& c1, unsigned long n,
                                  const FactorBudget& budget) {
    if (c1 == 0) throw std::invalid_argument("exclusion_filter: c1 must be nonzero");
    if (n < 1) throw std::invalid_argument("exclusion_filter: n must be >= 1");
    ExclusionVerdict verdict;
    // The underlying congruences compare distinct points of one cycle,
    // so period 1 is out of the filter's reach.
    verdict.filter_applies = n >= 2;
    const Int M = power_modulus(d, n);
    verdict.modulus_prime = is_prime(M);

    Factorization f = factor(c1, budget);
    verdict.incomplete_warning = !f.complete;
    for (const auto& [p, e] : f.factors) {
        ExclusionTraceRow row;
        row.p = p;
        row.gcd_p = gcd(p, M);
        row.gcd_p_minus_1 = gcd(Int(p - 1), M);
        row.applicable = verdict.filter_applies && row.gcd_p == 1;
        if (row.applicable) {
            if (row.gcd_p_minus_1 == 1)
                row.triggered = true;
            else if (verdict.modulus_prime && p % M != 1)
                row.triggered = true;
        }
        if (row.triggered && !verdict.impossible) {
            verdict.impossible = true;
            verdict.witness_prime = p;
        }
        verdict.trace.push_back(std::move(row));
    }
    return verdict;
}

namespace {

// Rotates the cycle so the numerator of least absolute value (positive
// on a tie) leads, for deterministic output and diffing.
PeriodicPointRecord make_record(unsigned long n, const std::vector<Rat>& cycle, const Int& u2) {
    auto precedes = [](const Rat& a, const Rat& b) {
        Int aa = abs(num(a)), ab = abs(num(b));
        if (aa != ab) return aa < ab;
        return num(a) > num(b);
    };
    std::size_t lead = 0;
    for (std::size_t i = 1; i < cycle.size(); ++i)
        if (precedes(cycle[i], cycle[lead])) lead = i;
    PeriodicPointRecord rec;
    rec.n = n;
    rec.u2 = u2;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const Rat& point = cycle[(lead + i) % cycle.size()];
        rec.orbit.push_back(point);
        rec.numerators.push_back(num(point));
    }
    rec.u = rec.orbit.front();
    return rec;
}

} // namespace

std::vector<PeriodicPointRecord> find_periodic(unsigned long d, const Rat& c, unsigned long n,
                                               const SearchOptions& opts) {
    if (d < 2) throw std::invalid_argument("find_periodic: d must be >= 2");
    if (n < 1) throw std::invalid_argument("find_periodic: n must be >= 1");

    const auto u2 = denominator_gate(d, c);
    if (!u2) return {};
    const Int c1 = num(c);
    const Int c2 = den(c);

    if (opts.use_exclusion_prefilter && n >= 2 && c1 != 0) {
        ExclusionVerdict verdict = exclusion_filter(d, c1, n, opts.factor_budget);
        if (verdict.impossible) return {};
    }

    CriticalOrbit orbit =
        critical_orbit(d, c1, c2, n, opts.factor_budget, opts.size_guard);
    const Int& F0 = orbit.terms[n - 1];
    const Int M = power_modulus(d, n);

    std::set<Rat> confirmed;
    std::vector<PeriodicPointRecord> records;

    if (F0 == 0) {
        // f^n(0) = 0: the orbit of 0 closes up, which also forces every
        // periodic numerator to be free of prime divisors. The only
        // candidates besides 0's own cycle are +-1 (and c2 = 1 here,
        // since the orbit of 0 otherwise keeps the denominator c2^(d^(k-1))).
        unsigned long zero_period = 1;
        while (orbit.terms[zero_period - 1] != 0) ++zero_period;
        if (zero_period == n) {
            std::vector<Rat> cycle = orbit_eval(d, c, Rat(0), n - 1);
            records.push_back(make_record(n, cycle, *u2));
            for (const Rat& point : cycle) confirmed.insert(point);
        }
        for (int sign : {1, -1}) {
            Rat u = make_rational(sign, *u2);
            if (confirmed.count(u)) continue;
            if (exact_period(d, c, u, n) == n) {
                std::vector<Rat> cycle = orbit_eval(d, c, u, n - 1);
                records.push_back(make_record(n, cycle, *u2));
                for (const Rat& point : cycle) confirmed.insert(point);
            }
        }
    } else {
        const auto& fac = orbit.factorizations[n - 1];
        if (!fac || !fac->complete)
            throw incomplete_factorization(
                "find_periodic: critical-orbit term not fully factored; search would be "
                "incomplete");
        for (const Int& u1 : exact_divisors(*fac)) {
            if (gcd(u1, *u2) != 1) continue;
            if (n >= 2 && c1 != 0) {
                // Numerator filters; they hold for exact period >= 2.
                if (gcd(u1, c1) != 1) continue;
                if (!divides_power_diff(c1, u1, *u2, M)) continue;
            }
            Rat u = make_rational(u1, *u2);
            if (confirmed.count(u)) continue;
            if (exact_period(d, c, u, n) != n) continue;
            std::vector<Rat> cycle = orbit_eval(d, c, u, n - 1);
            records.push_back(make_record(n, cycle, *u2));
            for (const Rat& point : cycle) confirmed.insert(point);
        }
    }

    std::sort(records.begin(), records.end(),
              [](const PeriodicPointRecord& a, const PeriodicPointRecord& b) { return a.u < b.u; });
    for (auto& rec : records) rec.checks = structural_checks(rec, d, c, opts.factor_budget);
    return records;
}

CheckMap structural_checks(const PeriodicPointRecord& rec, unsigned long d, const Rat& c,
                           const FactorBudget& budget) {
    CheckMap checks;
    const Int c1 = num(c);
    const Int c2 = den(c);
    const unsigned long n = rec.n;
    const Int M = power_modulus(d, n);

    checks["c2_is_u2_pow_d"] =
        (c2 == pow_int(rec.u2, d)) ? CheckStatus::pass : CheckStatus::fail;

    CriticalOrbit orbit = critical_orbit(d, c1, c2, n, budget);
    const Int& F0 = orbit.terms[n - 1];

    // u1 || F0: each numerator prime appears in F0 with the same
    // multiplicity. Zero numerators only occur when F0 itself vanishes.
    if (F0 == 0) {
        checks["numerators_exact_divisors"] = CheckStatus::vacuous;
    } else {
        CheckStatus status = CheckStatus::pass;
        for (const Int& u1 : rec.numerators) {
            if (u1 == 0) continue;
            Factorization fu = factor(u1, budget);
            for (const auto& [p, e] : fu.factors)
                if (static_cast<unsigned long>(valuation(p, F0)) != e) status = CheckStatus::fail;
            if (!fu.complete) status = CheckStatus::vacuous;
        }
        checks["numerators_exact_divisors"] = status;
    }

    // The remaining statements compare distinct cycle points or divide
    // by c1; they are stated for exact period n >= 2 and nonzero c1.
    const bool degenerate = (n < 2) || (c1 == 0);

    checks["numerators_coprime_c1"] = CheckStatus::vacuous;
    checks["c1_divides_power_diff"] = CheckStatus::vacuous;
    if (!degenerate) {
        CheckStatus coprime = CheckStatus::pass;
        CheckStatus powdiff = CheckStatus::pass;
        for (const Int& u1 : rec.numerators) {
            if (gcd(u1, c1) != 1) coprime = CheckStatus::fail;
            if (!divides_power_diff(c1, u1, rec.u2, M)) powdiff = CheckStatus::fail;
        }
        checks["numerators_coprime_c1"] = coprime;
        checks["c1_divides_power_diff"] = powdiff;
    }

    checks["pairwise_coprime_numerators"] = CheckStatus::vacuous;
    if (n >= 2) {
        CheckStatus status = CheckStatus::pass;
        for (std::size_t i = 0; i < rec.numerators.size(); ++i)
            for (std::size_t j = i + 1; j < rec.numerators.size(); ++j)
                if (gcd(rec.numerators[i], rec.numerators[j]) != 1) status = CheckStatus::fail;
        checks["pairwise_coprime_numerators"] = status;
    }

    // For p | c1 with gcd(p, d^n - 1) = 1: p divides no difference of
    // cycle numerators, yet divides every ratio (u_i^M - u_j^M)/(u_i - u_j).
    checks["ratio_divisibility"] = CheckStatus::vacuous;
    if (!degenerate) {
        Factorization fc = factor(c1, budget);
        bool any = false;
        CheckStatus status = CheckStatus::pass;
        for (const auto& [p, e] : fc.factors) {
            if (gcd(p, M) != 1) continue;
            for (std::size_t i = 0; i < rec.numerators.size() && status == CheckStatus::pass; ++i)
                for (std::size_t j = i + 1; j < rec.numerators.size(); ++j) {
                    any = true;
                    Int diff = (rec.numerators[i] - rec.numerators[j]) % p;
                    if (diff == 0) {
                        status = CheckStatus::fail;
                        break;
                    }
                    Int ai = rec.numerators[i] % p, aj = rec.numerators[j] % p;
                    if (ai < 0) ai += p;
                    if (aj < 0) aj += p;
                    Int pi, pj;
                    mpz_powm(pi.get_mpz_t(), ai.get_mpz_t(), M.get_mpz_t(), p.get_mpz_t());
                    mpz_powm(pj.get_mpz_t(), aj.get_mpz_t(), M.get_mpz_t(), p.get_mpz_t());
                    // p | ratio  <=>  u_i^M = u_j^M (mod p), given p
                    // does not divide the difference.
                    if (pi != pj) {
                        status = CheckStatus::fail;
                        break;
                    }
                }
            if (status != CheckStatus::pass) break;
        }
        checks["ratio_divisibility"] = any ? status : CheckStatus::vacuous;
    }

    return checks;
}

} // namespace unicrit
