#pragma once

#include "unicrit/census.hpp"
#include "unicrit/dynamics.hpp"
#include "unicrit/iterates.hpp"
#include "unicrit/newton.hpp"
#include "unicrit/primes_orbit.hpp"

#include <json.hpp>

namespace unicrit {

// All big integers serialize as decimal strings; keys keep insertion
// order so identical inputs give byte-identical output.
using Json = nlohmann::ordered_json;

Json to_json(const ClearedIterate& h);
Json to_json(const CriticalOrbit& orbit);
Json to_json(const Factorization& f);
Json to_json(const std::optional<StabilityCertificate>& cert);
Json to_json(const PeriodicPointRecord& rec);
Json periodic_result_json(const Rat& c, unsigned long d, unsigned long n,
                          const std::vector<PeriodicPointRecord>& records);
Json to_json(const ExclusionVerdict& verdict);
Json to_json(const PrimitiveReport& report);
Json to_json(const PeriodicPrimitiveReport& report);
Json period_check_json(unsigned long n, const PrimitiveReport& primitive,
                       const PeriodicPrimitiveReport& report);
Json to_json(const HeightCounts& counts);
Json to_json(const CensusReport& report);

ClearedIterate cleared_iterate_from_json(const Json& j);
CriticalOrbit critical_orbit_from_json(const Json& j);
std::optional<StabilityCertificate> certificate_from_json(const Json& j);

struct PeriodicResult {
    Rat c;
    unsigned long d = 2;
    unsigned long n = 1;
    std::vector<std::vector<Rat>> cycles;
};
PeriodicResult periodic_result_from_json(const Json& j);
ExclusionVerdict exclusion_from_json(const Json& j);

} // namespace unicrit
