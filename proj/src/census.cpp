#include "unicrit/census.hpp"

#include "unicrit/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

namespace unicrit {

namespace {

// Totient values 1..limit by linear sieve.
std::vector<unsigned long> totients(unsigned long limit) {
    std::vector<unsigned long> phi(limit + 1), primes;
    phi[1] = 1;
    std::vector<bool> composite(limit + 1, false);
    for (unsigned long i = 2; i <= limit; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            phi[i] = i - 1;
        }
        for (unsigned long p : primes) {
            if (p > limit / i) break;
            composite[i * p] = true;
            if (i % p == 0) {
                phi[i * p] = phi[i] * p;
                break;
            }
            phi[i * p] = phi[i] * (p - 1);
        }
    }
    return phi;
}

unsigned long integer_root(const Int& n, unsigned long k) {
    Int r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    return r.get_ui();
}

// #{1 <= a <= N : gcd(a, m) = 1} by inclusion-exclusion over the
// distinct primes of m.
Int coprime_count(const Int& N, unsigned long m) {
    std::vector<unsigned long> primes;
    unsigned long rest = m;
    for (unsigned long p = 2; p * p <= rest; ++p)
        if (rest % p == 0) {
            primes.push_back(p);
            while (rest % p == 0) rest /= p;
        }
    if (rest > 1) primes.push_back(rest);
    Int total = 0;
    const std::size_t subsets = std::size_t(1) << primes.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        Int div = 1;
        bool negative = false;
        for (std::size_t i = 0; i < primes.size(); ++i)
            if (mask & (std::size_t(1) << i)) {
                div *= primes[i];
                negative = !negative;
            }
        Int share = N / div;
        total += negative ? -share : share;
    }
    return total;
}

double predicted_ratio(const Int& N, unsigned long d) {
    const double nd = N.get_d();
    return std::numbers::pi * std::numbers::pi /
           (6.0 * std::pow(nd, double(d - 1) / double(d)));
}

// sN = 1 + 2 * #{coprime (a, b) in [1, N]^2} = 4 * sum phi(b) - 1.
Int count_sn(const Int& N) {
    if (N.fits_ulong_p() == 0)
        throw budget_exceeded("count_heights: N too large for the sieve");
    const unsigned long n = N.get_ui();
    auto phi = totients(n);
    Int sum = 0;
    for (unsigned long b = 1; b <= n; ++b) sum += phi[b];
    return 4 * sum - 1;
}

} // namespace

HeightCounts count_heights(const Int& N, unsigned long d, DenominatorVariant variant) {
    if (N < 1) throw std::invalid_argument("count_heights: N must be >= 1");
    if (d < 2) throw std::invalid_argument("count_heights: d must be >= 2");
    HeightCounts counts;
    counts.N = N;
    counts.d = d;
    counts.variant = variant;
    counts.sN = count_sn(N);

    const unsigned long root = integer_root(N, d);
    if (variant == DenominatorVariant::pairs) {
        counts.sdN = (2 * N + 1) * root;
    } else {
        Int total = 1; // 0/1
        for (unsigned long m = 1; m <= root; ++m) total += 2 * coprime_count(N, m);
        counts.sdN = total;
    }
    counts.ratio = make_rational(counts.sdN, counts.sN);
    counts.predicted = predicted_ratio(N, d);
    return counts;
}

namespace {

struct SweepTask {
    Rat c;
    unsigned long n;
};

} // namespace

CensusReport periodic_census(unsigned long d, const Int& N, unsigned long n_max,
                             const CensusOptions& opts) {
    if (N < 1) throw std::invalid_argument("periodic_census: N must be >= 1");
    if (n_max < 1) throw std::invalid_argument("periodic_census: n_max must be >= 1");

    CensusReport report;
    report.d = d;
    report.N = N;
    report.n_max = n_max;
    report.sN = count_sn(N);
    report.sdN_reduced = count_heights(N, d, DenominatorVariant::reduced).sdN;
    report.sdN_pairs = count_heights(N, d, DenominatorVariant::pairs).sdN;
    report.pN = report.sN;
    report.predicted = predicted_ratio(N, d);

    // Gate-passing c values: denominator m^d, numerator coprime to m.
    std::vector<Rat> cs;
    const unsigned long root = integer_root(N, d);
    const unsigned long n_ul = N.get_ui();
    for (unsigned long m = 1; m <= root; ++m) {
        Int beta = 1;
        mpz_ui_pow_ui(beta.get_mpz_t(), m, d);
        if (m == 1) cs.push_back(Rat(0));
        for (unsigned long a = 1; a <= n_ul; ++a) {
            if (std::gcd(a, m) != 1) continue;
            cs.push_back(make_rational(Int(a), beta));
            cs.push_back(make_rational(-Int(a), beta));
        }
    }

    // Volume guard: candidate count times the slot volume of the
    // largest iterate a search would clear.
    std::uint64_t slots = 1;
    for (unsigned long k = 1; k < n_max && slots < opts.volume_cap; ++k) slots *= d;
    const std::uint64_t volume = std::uint64_t(cs.size()) * n_max * slots;
    if (volume > opts.volume_cap)
        throw budget_exceeded("periodic_census: estimated sweep volume exceeds the cap");

    std::vector<SweepTask> tasks;
    tasks.reserve(cs.size() * n_max);
    for (const Rat& c : cs)
        for (unsigned long n = 1; n <= n_max; ++n) tasks.push_back({c, n});

    struct Outcome {
        std::vector<PeriodicPointRecord> records;
        std::string failure;
    };
    std::vector<Outcome> outcomes(tasks.size());

    unsigned long thread_count = opts.threads ? opts.threads : std::thread::hardware_concurrency();
    thread_count = std::max(1ul, std::min<unsigned long>(thread_count, tasks.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                outcomes[i].records = find_periodic(d, tasks[i].c, tasks[i].n, opts.search);
            } catch (const std::exception& e) {
                outcomes[i].failure = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned long t = 1; t < thread_count; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::set<Rat> with_points;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (!outcomes[i].failure.empty()) {
            report.failures.push_back({tasks[i].c, tasks[i].n, outcomes[i].failure});
        } else if (!outcomes[i].records.empty()) {
            with_points.insert(tasks[i].c);
            report.entries.push_back({tasks[i].c, tasks[i].n, std::move(outcomes[i].records)});
        }
    }
    report.pdN = static_cast<long>(with_points.size());

    auto order = [](const Rat& a, const Rat& b) {
        Int ha = height(a), hb = height(b);
        if (ha != hb) return ha < hb;
        return a < b;
    };
    std::sort(report.entries.begin(), report.entries.end(),
              [&](const CensusEntry& x, const CensusEntry& y) {
                  if (x.c != y.c) return order(x.c, y.c);
                  return x.n < y.n;
              });
    std::sort(report.failures.begin(), report.failures.end(),
              [&](const CensusFailure& x, const CensusFailure& y) {
                  if (x.c != y.c) return order(x.c, y.c);
                  return x.n < y.n;
              });
    return report;
}

} // namespace unicrit
