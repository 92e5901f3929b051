#include "unicrit/json_io.hpp"

#include <stdexcept>

namespace unicrit {

namespace {

Json status_json(CheckStatus s) {
    if (s == CheckStatus::vacuous) return "vacuous";
    return s == CheckStatus::pass;
}

// Worst status wins: any fail beats any pass beats all-vacuous.
Json combine_status(const std::vector<CheckStatus>& statuses) {
    bool any_fail = false, any_pass = false;
    for (CheckStatus s : statuses) {
        any_fail |= s == CheckStatus::fail;
        any_pass |= s == CheckStatus::pass;
    }
    if (any_fail) return false;
    if (any_pass) return true;
    return "vacuous";
}

} // namespace

Json to_json(const ClearedIterate& h) {
    Json j;
    j["d"] = h.d;
    j["n"] = h.n;
    j["c1"] = to_string(h.c1);
    j["c2"] = to_string(h.c2);
    Json coeffs = Json::array();
    for (const Int& v : h.F) coeffs.push_back(to_string(v));
    j["F"] = std::move(coeffs);
    return j;
}

Json to_json(const CriticalOrbit& orbit) {
    Json j;
    j["d"] = orbit.d;
    j["n"] = orbit.terms.size();
    j["c1"] = to_string(orbit.c1);
    j["c2"] = to_string(orbit.c2);
    Json terms = Json::array();
    for (const Int& v : orbit.terms) terms.push_back(to_string(v));
    j["F"] = std::move(terms);
    return j;
}

Json to_json(const Factorization& f) {
    Json j;
    j["sign"] = f.sign;
    Json factors = Json::array();
    for (const auto& [p, e] : f.factors) {
        Json entry;
        entry["p"] = to_string(p);
        entry["e"] = e;
        factors.push_back(std::move(entry));
    }
    j["factors"] = std::move(factors);
    j["complete"] = f.complete;
    if (!f.complete) j["unfactored"] = to_string(f.unfactored);
    return j;
}

Json to_json(const std::optional<StabilityCertificate>& cert) {
    Json j;
    if (cert) {
        j["stable"] = true;
        j["p"] = to_string(cert->p);
        j["e"] = cert->e;
    } else {
        j["stable"] = "unknown";
    }
    return j;
}

Json to_json(const PeriodicPointRecord& rec) {
    Json j;
    j["u"] = to_string(rec.u);
    j["n"] = rec.n;
    Json orbit = Json::array();
    for (const Rat& x : rec.orbit) orbit.push_back(to_string(x));
    j["orbit"] = std::move(orbit);
    Json checks;
    for (const auto& [name, status] : rec.checks) checks[name] = status_json(status);
    j["checks"] = std::move(checks);
    return j;
}

Json periodic_result_json(const Rat& c, unsigned long d, unsigned long n,
                          const std::vector<PeriodicPointRecord>& records) {
    Json j;
    j["c"] = to_string(c);
    j["d"] = d;
    j["n"] = n;
    Json cycles = Json::array();
    for (const auto& rec : records) {
        Json cycle = Json::array();
        for (const Rat& x : rec.orbit) cycle.push_back(to_string(x));
        cycles.push_back(std::move(cycle));
    }
    j["cycles"] = std::move(cycles);
    // Conjunction across cycles, keyed by check name.
    std::map<std::string, std::vector<CheckStatus>> merged;
    for (const auto& rec : records)
        for (const auto& [name, status] : rec.checks) merged[name].push_back(status);
    Json checks = Json::object();
    for (const auto& [name, statuses] : merged) checks[name] = combine_status(statuses);
    j["checks"] = std::move(checks);
    return j;
}

Json to_json(const ExclusionVerdict& verdict) {
    Json j;
    j["outcome"] = verdict.impossible ? "impossible" : "inconclusive";
    if (verdict.witness_prime) j["p"] = to_string(*verdict.witness_prime);
    j["filter_applies"] = verdict.filter_applies;
    j["modulus_prime"] = verdict.modulus_prime;
    j["incomplete_warning"] = verdict.incomplete_warning;
    Json trace = Json::array();
    for (const auto& row : verdict.trace) {
        Json r;
        r["p"] = to_string(row.p);
        r["gcd_p"] = to_string(row.gcd_p);
        r["gcd_p_minus_1"] = to_string(row.gcd_p_minus_1);
        r["applicable"] = row.applicable;
        r["triggered"] = row.triggered;
        trace.push_back(std::move(r));
    }
    j["trace"] = std::move(trace);
    return j;
}

Json to_json(const PrimitiveReport& report) {
    Json primitive = Json::object();
    for (std::size_t k = 0; k < report.primitive.size(); ++k) {
        Json primes = Json::array();
        for (const Int& p : report.primitive[k]) primes.push_back(to_string(p));
        primitive[std::to_string(k + 1)] = std::move(primes);
    }
    Json j;
    j["primitive"] = std::move(primitive);
    if (report.truncated_at) j["truncated_at"] = *report.truncated_at;
    return j;
}

Json to_json(const PeriodicPrimitiveReport& report) {
    Json j;
    j["applicable"] = report.applicable;
    j["truncated"] = report.truncated;
    j["thm_primes_of_u1"] = status_json(report.numerator_primes_primitive);
    j["count_bound"] = status_json(report.count_bound);
    j["orbit_consistency"] = status_json(report.orbit_consistency);
    j["primitive_count"] = report.primitive_count;
    Json primes = Json::array();
    for (const Int& p : report.numerator_primes) primes.push_back(to_string(p));
    j["numerator_primes"] = std::move(primes);
    return j;
}

Json period_check_json(unsigned long n, const PrimitiveReport& primitive,
                       const PeriodicPrimitiveReport& report) {
    Json j;
    j["n"] = n;
    Json sets = Json::object();
    for (std::size_t k = 0; k < primitive.primitive.size() && k < n; ++k) {
        Json primes = Json::array();
        for (const Int& p : primitive.primitive[k]) primes.push_back(to_string(p));
        sets[std::to_string(k + 1)] = std::move(primes);
    }
    j["primitive"] = std::move(sets);
    j["thm_primes_of_u1"] = status_json(report.numerator_primes_primitive);
    j["count_bound"] = status_json(report.count_bound);
    j["orbit_consistency"] = status_json(report.orbit_consistency);
    j["applicable"] = report.applicable;
    j["truncated"] = report.truncated;
    return j;
}

Json to_json(const HeightCounts& counts) {
    Json j;
    j["d"] = counts.d;
    j["N"] = to_string(counts.N);
    j["variant"] = counts.variant == DenominatorVariant::reduced ? "reduced" : "pairs";
    j["sN"] = to_string(counts.sN);
    j["sdN"] = to_string(counts.sdN);
    j["ratio"] = counts.ratio.get_d();
    j["predicted"] = counts.predicted;
    return j;
}

Json to_json(const CensusReport& report) {
    Json j;
    j["d"] = report.d;
    j["N"] = to_string(report.N);
    j["n_max"] = report.n_max;
    j["sN"] = to_string(report.sN);
    j["sdN_reduced"] = to_string(report.sdN_reduced);
    j["sdN_pairs"] = to_string(report.sdN_pairs);
    j["pN"] = to_string(report.pN);
    j["pdN"] = to_string(report.pdN);
    j["predicted"] = report.predicted;
    Json entries = Json::array();
    for (const auto& entry : report.entries)
        entries.push_back(periodic_result_json(entry.c, report.d, entry.n, entry.records));
    j["records"] = std::move(entries);
    Json failures = Json::array();
    for (const auto& failure : report.failures) {
        Json f;
        f["c"] = to_string(failure.c);
        f["n"] = failure.n;
        f["reason"] = failure.reason;
        failures.push_back(std::move(f));
    }
    j["failures"] = std::move(failures);
    return j;
}

namespace {

Int int_from_json(const Json& j) { return Int(j.get<std::string>()); }

} // namespace

ClearedIterate cleared_iterate_from_json(const Json& j) {
    ClearedIterate h;
    h.d = j.at("d").get<unsigned long>();
    h.n = j.at("n").get<unsigned long>();
    h.c1 = int_from_json(j.at("c1"));
    h.c2 = int_from_json(j.at("c2"));
    for (const auto& v : j.at("F")) h.F.push_back(int_from_json(v));
    return h;
}

CriticalOrbit critical_orbit_from_json(const Json& j) {
    CriticalOrbit orbit;
    orbit.d = j.at("d").get<unsigned long>();
    orbit.c1 = int_from_json(j.at("c1"));
    orbit.c2 = int_from_json(j.at("c2"));
    for (const auto& v : j.at("F")) orbit.terms.push_back(int_from_json(v));
    orbit.factorizations.assign(orbit.terms.size(), std::nullopt);
    return orbit;
}

std::optional<StabilityCertificate> certificate_from_json(const Json& j) {
    const auto& stable = j.at("stable");
    if (stable.is_string()) {
        if (stable.get<std::string>() != "unknown")
            throw std::invalid_argument("certificate_from_json: bad 'stable' value");
        return std::nullopt;
    }
    if (!stable.get<bool>())
        throw std::invalid_argument("certificate_from_json: 'stable' cannot be false");
    return StabilityCertificate{int_from_json(j.at("p")), j.at("e").get<unsigned long>()};
}

PeriodicResult periodic_result_from_json(const Json& j) {
    PeriodicResult result;
    result.c = parse_rational(j.at("c").get<std::string>());
    result.d = j.at("d").get<unsigned long>();
    result.n = j.at("n").get<unsigned long>();
    for (const auto& cycle : j.at("cycles")) {
        std::vector<Rat> points;
        for (const auto& x : cycle) points.push_back(parse_rational(x.get<std::string>()));
        result.cycles.push_back(std::move(points));
    }
    return result;
}

ExclusionVerdict exclusion_from_json(const Json& j) {
    ExclusionVerdict verdict;
    verdict.impossible = j.at("outcome").get<std::string>() == "impossible";
    if (j.contains("p")) verdict.witness_prime = int_from_json(j.at("p"));
    verdict.filter_applies = j.at("filter_applies").get<bool>();
    verdict.modulus_prime = j.at("modulus_prime").get<bool>();
    verdict.incomplete_warning = j.at("incomplete_warning").get<bool>();
    for (const auto& r : j.at("trace")) {
        ExclusionTraceRow row;
        row.p = int_from_json(r.at("p"));
        row.gcd_p = int_from_json(r.at("gcd_p"));
        row.gcd_p_minus_1 = int_from_json(r.at("gcd_p_minus_1"));
        row.applicable = r.at("applicable").get<bool>();
        row.triggered = r.at("triggered").get<bool>();
        verdict.trace.push_back(std::move(row));
    }
    return verdict;
}

} // namespace unicrit
