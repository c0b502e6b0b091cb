// Instance synthesis: the built-in ten-satellite catalog, the four Chinese
// ground stations, and the ND/PD/MD scenario generator.

#pragma once

#include <cstdint>
#include <stdexcept>

#include "downlink/core.hpp"

namespace downlink {

// Station subsets: ND = the three normal stations, PD = the polar station,
// MD = all four.
enum class DistributionKind { ND, PD, MD };

enum class SatelliteClass { GaoFen, SuperView, EarthResource };

struct GenerationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const char* to_string(DistributionKind kind);
const char* to_string(SatelliteClass cls);
DistributionKind parse_distribution_kind(const std::string& s);

// Class from the catalog name prefix (GF/SV/ZY); throws on unknown prefixes.
SatelliteClass satellite_class(const Satellite& sat);

// Observation-duration interval per class, seconds.
void class_duration_range(SatelliteClass cls, double& lo, double& hi);

// The ten-satellite catalog and the Miyun/Kashi/Sanya/Kiruna stations.
std::vector<Satellite> builtin_satellites();
std::vector<GroundStation> builtin_stations(DistributionKind kind);

// True when n_oid sits on the documented size grid for the kind
// (ND/PD: 50..500 step 50, MD: 100..1000 step 100).
bool on_size_grid(DistributionKind kind, int n_oid);

// Deterministic synthesis of a complete instance: catalog satellites, the
// kind's stations, visibility windows over a 24 h horizon, and n_oid OIDs
// drawn until each has at least one candidate window. Throws GenerationError
// when the draw budget (100 * n_oid) is exhausted first.
Instance generate_instance(DistributionKind kind, int n_oid, std::uint64_t seed);

}  // namespace downlink
