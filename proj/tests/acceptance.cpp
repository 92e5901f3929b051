// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Each criterion carries its runtime bound; tolerances are pinned here.

#include "unicrit/census.hpp"
#include "unicrit/dynamics.hpp"
#include "unicrit/iterates.hpp"
#include "unicrit/newton.hpp"
#include "unicrit/primes_orbit.hpp"

#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <vector>

using namespace unicrit;

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

int failures = 0;

void report(int number, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s — %s\n", number, pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++failures;
}

Rat random_reduced(std::mt19937_64& rng, long bound) {
    for (;;) {
        long a = long(rng() % (2 * bound + 1)) - bound;
        long b = long(rng() % bound) + 1;
        if (std::gcd(std::abs(a), b) != 1) continue;
        return make_rational(a, b);
    }
}

// ---- criterion 1: coefficient structure ---------------------------------

void criterion_coefficient_structure() {
    Stopwatch timer;
    std::mt19937_64 rng(1001);
    bool ok = true;
    std::string why;
    for (int trial = 0; trial < 500 && ok; ++trial) {
        unsigned long d = 2 + rng() % 4;
        unsigned long n = 1 + rng() % 4;
        Rat c = random_reduced(rng, 50);
        const Int& c1 = num(c);
        const Int& c2 = den(c);

        auto table = iterate_coeffs(d, c, n);
        auto dense = oracles::naive_iterate(d, c, n);
        for (std::size_t i = 0; i < dense.size() && ok; ++i) {
            Rat expected = (i % d == 0) ? table.coeffs[i / d] : Rat(0);
            if (dense[i] != expected) {
                ok = false;
                why = "iterate_coeffs disagrees with substitution at d=" + std::to_string(d) +
                      " n=" + std::to_string(n) + " c=" + to_string(c);
            }
        }

        auto h = cleared_iterate(d, c1, c2, n);
        unsigned long top = 1;
        for (unsigned long k = 1; k < n; ++k) top *= d;
        Int c2_top;
        mpz_pow_ui(c2_top.get_mpz_t(), c2.get_mpz_t(), top);
        if (h.F.back() != c2_top) {
            ok = false;
            why = "top coefficient is not c2^(d^(n-1))";
        }
        Int c2_pow = 1;
        for (std::size_t i = 0; i + 1 < h.F.size() && ok; ++i) {
            bool divides = (c1 == 0) ? h.F[i] == 0 : (h.F[i] % (c1 * c2_pow) == 0);
            if (!divides) {
                ok = false;
                why = "c1*c2^i does not divide F_i";
            }
            c2_pow *= c2;
        }
        if (ok && gcd(c2, h.F.front()) != 1) {
            ok = false;
            why = "gcd(c2, F_0) != 1";
        }
    }
    double elapsed = timer.seconds();
    if (ok && elapsed >= 60.0) {
        ok = false;
        why = "runtime over 60 s";
    }
    char buffer[160];
    std::snprintf(buffer, sizeof buffer,
                  "500 random tuples, substitution oracle + cleared invariants, %.1f s", elapsed);
    report(1, ok, ok ? buffer : why);
}

// ---- criterion 2: the x^2 - 4/3 worked example, bit-exact ----------------

bool proportional(const std::vector<Int>& a, const std::vector<Int>& b) {
    if (a.size() != b.size()) return false;
    // cross-multiplication against the leading pair
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] * b.back() != b[i] * a.back()) return false;
    return true;
}

void criterion_worked_example() {
    Rat c = make_rational(-4, 3);
    bool ok = base_irreducibility(2, c);
    std::string why = ok ? "" : "base irreducibility failed";

    if (ok && stability_certificate(2, c).has_value()) {
        ok = false;
        why = "unexpected stability certificate";
    }

    std::vector<Int> h2{4, 0, -24, 0, 9};
    if (ok) {
        auto cleared = cleared_iterate(2, -4, 3, 2).dense();
        if (cleared != std::vector<Int>{4, 0, -24, 0, 9}) {
            ok = false;
            why = "cleared f^2 is not 9x^4 - 24x^2 + 4";
        }
    }
    if (ok) {
        auto res = irreducibility_oracle(h2);
        if (res.outcome != OracleOutcome::reducible || !res.witness) {
            ok = false;
            why = "oracle did not exhibit a factor";
        } else if (!proportional(res.witness->factor, {2, -6, 3})) {
            ok = false;
            why = "witness is not (x^2 - 2x + 2/3) cleared";
        }
    }
    report(2, ok, ok ? "x^2 - 4/3: irreducible base, no certificate, f^2 splits with witness "
                       "3x^2 - 6x + 2"
                     : why);
}

// ---- criterion 3: stability consistency -----------------------------------

void criterion_stability_consistency() {
    Stopwatch timer;
    std::mt19937_64 rng(1003);
    int tested = 0, contradictions = 0, proven_irreducible = 0, unknown = 0;
    while (tested < 200) {
        unsigned long d = 2 + rng() % 2;
        Rat c = random_reduced(rng, 30);
        if (c == 0) continue;
        auto cert = stability_certificate(d, c);
        if (!cert) continue;
        ++tested;
        for (unsigned long n = 1; n <= 3; ++n) {
            std::size_t degree = 1;
            for (unsigned long k = 0; k < n; ++k) degree *= d;
            if (degree > 16) continue;
            auto h = cleared_iterate(d, num(c), den(c), n);
            auto res = irreducibility_oracle(h.dense());
            if (res.outcome == OracleOutcome::reducible) ++contradictions;
            if (res.outcome == OracleOutcome::irreducible) ++proven_irreducible;
            if (res.outcome == OracleOutcome::unknown) ++unknown;
        }
    }
    double elapsed = timer.seconds();
    bool ok = contradictions == 0 && elapsed < 300.0;
    char buffer[200];
    std::snprintf(buffer, sizeof buffer,
                  "200 certified maps, %d iterates proven irreducible, %d unknown, %d "
                  "contradictions, %.1f s",
                  proven_irreducible, unknown, contradictions, elapsed);
    report(3, ok, buffer);
}

// ---- criteria 4, 6, 9: search vs oracle, exclusion soundness, integrality --

struct SweepData {
    std::vector<Rat> cs; // all reduced c with h(c) <= 30
    std::map<std::pair<std::string, unsigned long>, std::vector<PeriodicPointRecord>> found;
};

SweepData sweep_data;

void criterion_search_completeness() {
    Stopwatch timer;
    bool ok = true;
    std::string why;
    for (long b = 1; b <= 30 && ok; ++b)
        for (long a = -30; a <= 30 && ok; ++a) {
            if (std::gcd(std::abs(a), b) != 1) continue;
            Rat c = make_rational(a, b);
            if (height(c) > 30) continue;
            sweep_data.cs.push_back(c);
            for (unsigned long n = 1; n <= 3 && ok; ++n) {
                auto records = find_periodic(2, c, n);
                SearchOptions no_filter;
                no_filter.use_exclusion_prefilter = false;
                auto unfiltered = find_periodic(2, c, n, no_filter);
                auto expected = oracles::brute_force_cycles(2, c, n);
                auto cycles = [](const std::vector<PeriodicPointRecord>& records) {
                    std::vector<std::vector<Rat>> out;
                    for (const auto& rec : records) out.push_back(rec.orbit);
                    return out;
                };
                if (cycles(records) != expected || cycles(unfiltered) != expected) {
                    ok = false;
                    why = "mismatch at c=" + to_string(c) + " n=" + std::to_string(n);
                }
                sweep_data.found[{to_string(c), n}] = std::move(records);
            }
        }
    double elapsed = timer.seconds();
    if (ok && elapsed >= 300.0) {
        ok = false;
        why = "runtime over 5 min";
    }
    char buffer[160];
    std::snprintf(buffer, sizeof buffer,
                  "%zu maps x 3 periods match the direct-iteration oracle (filtered and "
                  "unfiltered), %.1f s",
                  sweep_data.cs.size(), elapsed);
    report(4, ok, ok ? buffer : why);
}

void criterion_worked_three_cycle() {
    bool ok = true;
    std::string why;

    auto records = find_periodic(2, make_rational(-29, 16), 3);
    if (records.size() != 1 ||
        records[0].orbit != std::vector<Rat>{make_rational(-1, 4), make_rational(-7, 4),
                                             make_rational(5, 4)}) {
        ok = false;
        why = "cycle { -1/4, -7/4, 5/4 } not returned exactly";
    }
    if (ok)
        for (const auto& [name, status] : records[0].checks)
            if (status != CheckStatus::pass) {
                ok = false;
                why = "structural check " + name + " did not pass";
            }

    auto orbit = critical_orbit(2, -29, 16, 3);
    if (ok && orbit.terms != std::vector<Int>{-29, 377, 23345}) {
        ok = false;
        why = "critical orbit is not [-29, 377, 23345]";
    }
    if (ok) {
        auto prim = primitive_divisors(orbit);
        if (prim.primitive !=
            std::vector<std::vector<Int>>{{29}, {13}, {5, 7, 23}}) {
            ok = false;
            why = "primitive sets differ from [{29}, {13}, {5,7,23}]";
        }
    }
    if (ok) {
        auto check = periodic_primitive_check(records[0], orbit);
        if (check.numerator_primes != std::vector<Int>{5, 7} ||
            check.numerator_primes_primitive != CheckStatus::pass ||
            check.count_bound != CheckStatus::pass || check.primitive_count != 3) {
            ok = false;
            why = "period-3 primitive-divisor consequences failed";
        }
    }
    report(5, ok,
           ok ? "c = -29/16: cycle, checks, orbit [-29, 377, 23345], primitive sets, count 3 >= 2"
              : why);
}

void criterion_exclusion_soundness() {
    bool ok = true;
    std::string why;
    int impossible_count = 0;
    for (const Rat& c : sweep_data.cs) {
        if (num(c) == 0) continue;
        for (unsigned long n = 2; n <= 3; ++n) {
            auto verdict = exclusion_filter(2, num(c), n);
            if (!verdict.impossible) continue;
            ++impossible_count;
            if (!sweep_data.found[{to_string(c), n}].empty()) {
                ok = false;
                why = "impossible verdict with nonempty search at c=" + to_string(c) +
                      " n=" + std::to_string(n);
            }
        }
    }
    // Spot checks. The period-1 congruence argument has no content, so
    // the filter starts at n = 2 (x^2 + 2/9 has fixed points).
    if (ok && !exclusion_filter(2, 5, 2).impossible) {
        ok = false;
        why = "(c1=5, n=2) not impossible";
    }
    for (unsigned long n = 2; ok && n <= 5; ++n)
        if (!exclusion_filter(2, 2, n).impossible) {
            ok = false;
            why = "(c1=2, n=" + std::to_string(n) + ") not impossible";
        }
    if (ok && exclusion_filter(2, 2, 1).impossible) {
        ok = false;
        why = "period-1 verdict must stay inconclusive";
    }
    if (ok && find_periodic(2, make_rational(2, 9), 1).empty()) {
        ok = false;
        why = "x^2 + 2/9 fixed points missing";
    }
    char buffer[160];
    std::snprintf(buffer, sizeof buffer,
                  "%d impossible verdicts across the sweep, none contradicted; spot checks hold",
                  impossible_count);
    report(6, ok, ok ? buffer : why);
}

void criterion_integrality() {
    bool ok = true;
    std::string why;
    int integer_points = 0;
    for (const Rat& c : sweep_data.cs) {
        if (den(c) != 1) continue;
        for (unsigned long n = 1; n <= 3; ++n)
            for (const auto& rec : sweep_data.found[{to_string(c), n}])
                for (const Rat& x : rec.orbit) {
                    ++integer_points;
                    if (den(x) != 1) {
                        ok = false;
                        why = "non-integer periodic point " + to_string(x) +
                              " for integer c = " + to_string(c);
                    }
                }
    }
    char buffer[160];
    std::snprintf(buffer, sizeof buffer,
                  "every periodic point over integer c is an integer (%d points)",
                  integer_points);
    report(9, ok, ok ? buffer : why);
}

// ---- criterion 7: density at N = 10^6 ------------------------------------

void criterion_density() {
    Stopwatch timer;
    const Int N = 1'000'000;
    auto reduced = count_heights(N, 2, DenominatorVariant::reduced);
    auto pairs = count_heights(N, 2, DenominatorVariant::pairs);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double n_d = 1e6;

    double s_normalized = Rat(reduced.sN).get_d() * pi2 / (12.0 * n_d * n_d);
    double pairs_normalized = Rat(pairs.sdN).get_d() / (2.0 * std::pow(n_d, 1.5));
    double ratio_normalized = pairs.ratio.get_d() * 6.0 * std::sqrt(n_d) / pi2;
    double elapsed = timer.seconds();

    bool ok = s_normalized > 0.99 && s_normalized < 1.01 && pairs_normalized > 0.98 &&
              pairs_normalized < 1.02 && ratio_normalized > 0.97 && ratio_normalized < 1.03 &&
              elapsed < 30.0;
    char buffer[200];
    std::snprintf(buffer, sizeof buffer,
                  "N=10^6: |S|*pi^2/12N^2 = %.5f, pairs/(2N^1.5) = %.5f, ratio*6sqrtN/pi^2 = "
                  "%.5f, %.1f s",
                  s_normalized, pairs_normalized, ratio_normalized, elapsed);
    report(7, ok, buffer);
}

// ---- criterion 8: no period 4 or 5 up to height 100 -----------------------

void criterion_no_high_periods() {
    Stopwatch timer;
    CensusOptions opts;
    opts.volume_cap = 10'000'000;
    auto report_data = periodic_census(2, 100, 5, opts);
    double elapsed = timer.seconds();

    bool ok = report_data.failures.empty();
    std::string why = ok ? "" : "sweep failures: " + report_data.failures[0].reason;
    int high = 0;
    for (const auto& entry : report_data.entries)
        if (entry.n >= 4) ++high;
    if (high != 0) {
        ok = false;
        why = "found exact period >= 4 entries";
    }
    if (ok && elapsed >= 600.0) {
        ok = false;
        why = "runtime over 10 min";
    }
    char buffer[160];
    std::snprintf(buffer, sizeof buffer,
                  "census N=100 n<=5: no exact period 4 or 5, %zu lower-period entries, %.1f s",
                  report_data.entries.size(), elapsed);
    report(8, ok, ok ? buffer : why);
}

} // namespace

int main() {
    criterion_coefficient_structure();
    criterion_worked_example();
    criterion_stability_consistency();
    criterion_search_completeness();
    criterion_worked_three_cycle();
    criterion_exclusion_soundness();
    criterion_density();
    criterion_no_high_periods();
    criterion_integrality();
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
