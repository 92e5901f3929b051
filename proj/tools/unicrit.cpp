// Command-line front end: every pipeline of the library behind one
// binary with machine-readable output. Exit codes: 0 success (an empty
// result is a success), 2 bad input, 3 computational incompleteness
// (factor budget, size guard, sweep volume).

#include "unicrit/census.hpp"
#include "unicrit/dynamics.hpp"
#include "unicrit/errors.hpp"
#include "unicrit/iterates.hpp"
#include "unicrit/json_io.hpp"
#include "unicrit/newton.hpp"
#include "unicrit/primes_orbit.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace unicrit;

struct CommonOptions {
    unsigned long trial_limit = 1'000'000;
    std::uint64_t rho_iterations = 400'000'000;
    unsigned long pm1_bound = 100'000;
    std::size_t max_coeff_slots = std::size_t(1) << 20;
    std::size_t max_term_bits = std::size_t(1) << 24;
    bool json = false;

    FactorBudget factor_budget() const { return {trial_limit, rho_iterations, pm1_bound}; }
    SizeGuard size_guard() const { return {max_coeff_slots, max_term_bits}; }
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_flag("--json", opts.json, "machine-readable JSON on stdout");
    cmd->add_option("--trial-limit", opts.trial_limit, "trial division bound");
    cmd->add_option("--rho-iters", opts.rho_iterations, "rho iteration budget");
    cmd->add_option("--pm1-bound", opts.pm1_bound, "p-1 stage bound");
    cmd->add_option("--size-guard", opts.max_coeff_slots, "max coefficient slots");
    cmd->add_option("--term-bits", opts.max_term_bits, "max orbit term bits");
}

Rat parse_c(const std::string& text) {
    auto c = try_parse_rational(text);
    if (!c) throw CLI::ValidationError("--c", "expected a rational like -29/16");
    return *c;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int run_iterate(const std::string& c_text, unsigned long d, unsigned long n,
                const CommonOptions& opts) {
    Rat c = parse_c(c_text);
    auto h = cleared_iterate(d, num(c), den(c), n, opts.size_guard());
    if (opts.json) {
        emit(to_json(h));
        return 0;
    }
    std::cout << "H_" << n << "(x) = c2^(d^(n-1)) * f^" << n << "(x), d = " << d
              << ", c = " << to_string(c) << "\n";
    for (std::size_t i = 0; i < h.F.size(); ++i)
        std::cout << "  x^" << i * d << ": " << to_string(h.F[i]) << "\n";
    return 0;
}

int run_stability(const std::string& c_text, unsigned long d, const CommonOptions& opts) {
    Rat c = parse_c(c_text);
    auto cert = stability_certificate(d, c, opts.factor_budget());
    if (opts.json) {
        emit(to_json(cert));
        return 0;
    }
    if (cert)
        std::cout << "stable: yes (p=" << to_string(cert->p) << ", e=" << cert->e << ")\n";
    else
        std::cout << "stable: unknown\n";
    return 0;
}

int run_periodic(const std::string& c_text, unsigned long d, unsigned long n, bool no_exclusion,
                 const CommonOptions& opts) {
    Rat c = parse_c(c_text);
    SearchOptions search;
    search.use_exclusion_prefilter = !no_exclusion;
    search.factor_budget = opts.factor_budget();
    search.size_guard = opts.size_guard();
    auto records = find_periodic(d, c, n, search);
    if (opts.json) {
        emit(periodic_result_json(c, d, n, records));
        return 0;
    }
    if (records.empty()) {
        std::cout << "no rational points of exact period " << n << "\n";
        return 0;
    }
    for (const auto& rec : records) {
        std::cout << "cycle:";
        for (const Rat& x : rec.orbit) std::cout << " " << to_string(x);
        std::cout << "\n";
        for (const auto& [name, status] : rec.checks)
            std::cout << "  " << name << ": " << to_string(status) << "\n";
    }
    return 0;
}

int run_exclude(const std::string& c1_text, unsigned long d, unsigned long n,
                const CommonOptions& opts) {
    Int c1;
    try {
        c1 = Int(c1_text);
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError("--c1", "expected an integer");
    }
    auto verdict = exclusion_filter(d, c1, n, opts.factor_budget());
    if (opts.json) {
        emit(to_json(verdict));
        return 0;
    }
    if (verdict.impossible)
        std::cout << "impossible (p=" << to_string(*verdict.witness_prime) << ")\n";
    else
        std::cout << "inconclusive\n";
    return 0;
}

int run_orbit(const std::string& c_text, unsigned long d, unsigned long n,
              const std::optional<std::string>& u_text, unsigned long steps,
              std::optional<unsigned long> period, const CommonOptions& opts) {
    Rat c = parse_c(c_text);
    if (u_text) {
        Rat u = parse_c(*u_text);
        auto orbit = orbit_eval(d, c, u, steps);
        if (opts.json) {
            Json j;
            j["d"] = d;
            j["c"] = to_string(c);
            j["u"] = to_string(u);
            Json points = Json::array();
            for (const Rat& x : orbit) points.push_back(to_string(x));
            j["orbit"] = std::move(points);
            emit(j);
            return 0;
        }
        for (const Rat& x : orbit) std::cout << to_string(x) << "\n";
        return 0;
    }

    if (period) n = std::max(n, *period);
    auto orbit = critical_orbit(d, num(c), den(c), n, opts.factor_budget(), opts.size_guard());
    auto primitive = primitive_divisors(orbit);
    bool divisible = divisibility_check(orbit);

    // Period mode: verify the primitive-divisor consequences on every
    // cycle of the requested exact period.
    std::vector<Json> period_checks;
    if (period) {
        SearchOptions search;
        search.factor_budget = opts.factor_budget();
        search.size_guard = opts.size_guard();
        for (const auto& rec : find_periodic(d, c, *period, search))
            period_checks.push_back(
                period_check_json(*period, primitive,
                                  periodic_primitive_check(rec, orbit, opts.factor_budget())));
    }

    if (opts.json) {
        Json j;
        j["orbit"] = to_json(orbit);
        Json factors = Json::array();
        for (const auto& fac : orbit.factorizations)
            factors.push_back(fac ? to_json(*fac) : Json(nullptr));
        j["factors"] = std::move(factors);
        j["primitive"] = to_json(primitive);
        j["divisibility_holds"] = divisible;
        if (period) {
            Json checks = Json::array();
            for (auto& check : period_checks) checks.push_back(std::move(check));
            j["period_checks"] = std::move(checks);
        }
        emit(j);
        return 0;
    }
    for (std::size_t k = 0; k < orbit.terms.size(); ++k) {
        std::cout << "F_0^" << (k + 1) << " = " << to_string(orbit.terms[k]);
        if (k < primitive.primitive.size()) {
            std::cout << "  primitive:";
            for (const Int& p : primitive.primitive[k]) std::cout << " " << to_string(p);
        }
        std::cout << "\n";
    }
    if (primitive.truncated_at)
        std::cout << "zero term at index " << *primitive.truncated_at << ": 0 is periodic\n";
    std::cout << "divisibility sequence: " << (divisible ? "holds" : "violated") << "\n";
    for (const auto& check : period_checks)
        std::cout << "period " << *period << " cycle: numerator primes primitive = "
                  << check["thm_primes_of_u1"].dump()
                  << ", count bound = " << check["count_bound"].dump() << "\n";
    return 0;
}

int run_census(unsigned long d, const std::string& n_text, unsigned long n_max,
               unsigned long threads, std::uint64_t volume_cap, const CommonOptions& opts) {
    Int N;
    try {
        N = Int(n_text);
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError("--N", "expected a positive integer");
    }
    CensusOptions census;
    census.search.factor_budget = opts.factor_budget();
    census.search.size_guard = opts.size_guard();
    census.threads = threads;
    census.volume_cap = volume_cap;
    auto report = periodic_census(d, N, n_max, census);
    if (opts.json) {
        emit(to_json(report));
        return report.failures.empty() ? 0 : 3;
    }
    std::cout << "census d=" << d << " N=" << to_string(N) << " n<=" << n_max << "\n";
    std::cout << "  |S(N)| = " << to_string(report.sN) << "\n";
    std::cout << "  |S_d(N)| reduced = " << to_string(report.sdN_reduced)
              << ", pairs = " << to_string(report.sdN_pairs) << "\n";
    std::cout << "  |P_d(N)| = " << to_string(report.pdN)
              << " of |P(N)| = " << to_string(report.pN) << "\n";
    for (const auto& entry : report.entries) {
        std::cout << "  c = " << to_string(entry.c) << ", n = " << entry.n << ":";
        for (const auto& rec : entry.records) {
            std::cout << " {";
            for (std::size_t i = 0; i < rec.orbit.size(); ++i)
                std::cout << (i ? ", " : "") << to_string(rec.orbit[i]);
            std::cout << "}";
        }
        std::cout << "\n";
    }
    for (const auto& failure : report.failures)
        std::cerr << "failed: c = " << to_string(failure.c) << ", n = " << failure.n << ": "
                  << failure.reason << "\n";
    return report.failures.empty() ? 0 : 3;
}

int run_density(unsigned long d, const std::string& n_text, const std::string& variant,
                const CommonOptions& opts) {
    Int N;
    try {
        N = Int(n_text);
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError("--N", "expected a positive integer");
    }
    auto v = variant == "pairs" ? DenominatorVariant::pairs : DenominatorVariant::reduced;
    auto counts = count_heights(N, d, v);
    if (opts.json) {
        emit(to_json(counts));
        return 0;
    }
    std::cout << "|S(N)| = " << to_string(counts.sN) << "\n";
    std::cout << "|S_" << d << "(N)| (" << variant << ") = " << to_string(counts.sdN) << "\n";
    std::cout << "ratio = " << counts.ratio.get_d() << ", predicted = " << counts.predicted
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic of x^d + c over Q: iterates, stability, periodic points, "
                 "primitive prime divisors, height censuses"};
    app.require_subcommand(1);

    std::string c_text, c1_text, n_big, u_text, variant = "reduced";
    unsigned long d = 2, n = 1, steps = 10, n_max = 3, threads = 0, period = 0;
    std::uint64_t volume_cap = 50'000'000;
    bool no_exclusion = false;

    CommonOptions iterate_opts, stability_opts, periodic_opts, exclude_opts, orbit_opts,
        census_opts, density_opts;

    auto* iterate = app.add_subcommand("iterate", "cleared coefficients of f^n");
    iterate->add_option("--d", d)->required();
    iterate->add_option("--c", c_text)->required();
    iterate->add_option("--n", n)->required();
    add_common(iterate, iterate_opts);

    auto* stability = app.add_subcommand("stability", "Newton-polygon stability certificate");
    stability->add_option("--d", d)->required();
    stability->add_option("--c", c_text)->required();
    add_common(stability, stability_opts);

    auto* periodic = app.add_subcommand("periodic", "all rational points of exact period n");
    periodic->add_option("--d", d)->required();
    periodic->add_option("--c", c_text)->required();
    periodic->add_option("--n", n)->required();
    periodic->add_flag("--no-exclusion", no_exclusion, "skip the exclusion pre-filter");
    add_common(periodic, periodic_opts);

    auto* exclude = app.add_subcommand("exclude", "necessary-condition filter on c1");
    exclude->add_option("--d", d)->required();
    exclude->add_option("--c1", c1_text)->required();
    exclude->add_option("--n", n)->required();
    add_common(exclude, exclude_opts);

    auto* orbit = app.add_subcommand("orbit", "critical orbit, factored, with primitive primes");
    orbit->add_option("--d", d)->required();
    orbit->add_option("--c", c_text)->required();
    orbit->add_option("--n", n, "orbit length")->required();
    auto* u_opt = orbit->add_option("--u", u_text, "evaluate the orbit of u instead");
    orbit->add_option("--steps", steps, "steps for --u mode");
    auto* period_opt =
        orbit->add_option("--period", period, "verify the exact-period consequences");
    add_common(orbit, orbit_opts);

    auto* census = app.add_subcommand("census", "periodic-point census up to height N");
    census->add_option("--d", d)->required();
    census->add_option("--N", n_big)->required();
    census->add_option("--nmax", n_max)->required();
    census->add_option("--threads", threads, "worker threads (0: hardware)");
    census->add_option("--census-cap", volume_cap, "sweep volume cap");
    add_common(census, census_opts);

    auto* density = app.add_subcommand("density", "height-count density experiment");
    density->add_option("--d", d)->required();
    density->add_option("--N", n_big)->required();
    density->add_option("--variant", variant)->check(CLI::IsMember({"reduced", "pairs"}));
    add_common(density, density_opts);

    try {
        app.parse(argc, argv);

        if (iterate->parsed()) return run_iterate(c_text, d, n, iterate_opts);
        if (stability->parsed()) return run_stability(c_text, d, stability_opts);
        if (periodic->parsed()) return run_periodic(c_text, d, n, no_exclusion, periodic_opts);
        if (exclude->parsed()) return run_exclude(c1_text, d, n, exclude_opts);
        if (orbit->parsed())
            return run_orbit(c_text, d, n,
                             u_opt->count() ? std::optional<std::string>(u_text) : std::nullopt,
                             steps,
                             period_opt->count() ? std::optional<unsigned long>(period)
                                                 : std::nullopt,
                             orbit_opts);
        if (census->parsed()) return run_census(d, n_big, n_max, threads, volume_cap, census_opts);
        if (density->parsed()) return run_density(d, n_big, variant, density_opts);
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const incomplete_factorization& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const size_guard_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const budget_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
