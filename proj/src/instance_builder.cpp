#include "downlink/instance_builder.hpp"

#include <string>

#include "downlink/orbit.hpp"
#include "downlink/rng.hpp"

namespace downlink {

const char* to_string(DistributionKind kind) {
    switch (kind) {
        case DistributionKind::ND: return "ND";
        case DistributionKind::PD: return "PD";
        case DistributionKind::MD: return "MD";
    }
    return "?";
}

const char* to_string(SatelliteClass cls) {
    switch (cls) {
        case SatelliteClass::GaoFen: return "GaoFen";
        case SatelliteClass::SuperView: return "SuperView";
        case SatelliteClass::EarthResource: return "EarthResource";
    }
    return "?";
}

DistributionKind parse_distribution_kind(const std::string& s) {
    if (s == "ND" || s == "nd") return DistributionKind::ND;
    if (s == "PD" || s == "pd") return DistributionKind::PD;
    if (s == "MD" || s == "md") return DistributionKind::MD;
    throw std::invalid_argument("unknown distribution kind: " + s);
}

SatelliteClass satellite_class(const Satellite& sat) {
    if (sat.name.rfind("GF", 0) == 0) return SatelliteClass::GaoFen;
    if (sat.name.rfind("SV", 0) == 0) return SatelliteClass::SuperView;
    if (sat.name.rfind("ZY", 0) == 0) return SatelliteClass::EarthResource;
    throw std::invalid_argument("cannot classify satellite name: " + sat.name);
}

void class_duration_range(SatelliteClass cls, double& lo, double& hi) {
    switch (cls) {
        case SatelliteClass::GaoFen: lo = 60.0; hi = 120.0; return;
        case SatelliteClass::SuperView: lo = 10.0; hi = 60.0; return;
        case SatelliteClass::EarthResource: lo = 120.0; hi = 200.0; return;
    }
}

std::vector<Satellite> builtin_satellites() {
    // name, id, a (km), e, i, raan, argp, mean anomaly (deg)
    return {
        {1, "GF0101", 7145.08, 0.001, 98.55, 359.06, 152.17, 265.39},
        {2, "GF0201", 7011.57, 0.002, 97.83, 2.89, 98.15, 257.45},
        {3, "GF0601", 7020.45, 0.002, 97.99, 6.87, 56.94, 94.33},
        {4, "SV01", 6901.65, 0.002, 97.43, 1.01, 124.24, 242.68},
        {5, "SV02", 6894.39, 0.001, 97.54, 11.87, 128.22, 90.39},
        {6, "SV03", 6883.14, 0.000, 97.51, 5.98, 341.26, 106.70},
        {7, "SV04", 6884.95, 0.004, 97.51, 6.14, 92.52, 195.65},
        {8, "ZY02C", 7143.90, 0.002, 98.64, 341.91, 57.55, 186.17},
        {9, "ZY3", 6875.80, 0.001, 97.41, 0.79, 59.20, 71.87},
        {10, "ZY0104", 7145.08, 0.001, 98.55, 359.06, 152.17, 265.39},
    };
}

std::vector<GroundStation> builtin_stations(DistributionKind kind) {
    const GroundStation miyun{1, "Miyun", 40.0, 117.0, 0.0, 5.0};
    const GroundStation kashi{2, "Kashi", 39.0, 76.0, 0.0, 5.0};
    const GroundStation sanya{3, "Sanya", 18.0, 109.0, 0.0, 5.0};
    const GroundStation kiruna{4, "Kiruna", 67.0, 21.0, 0.0, 5.0};
    switch (kind) {
        case DistributionKind::ND: return {miyun, kashi, sanya};
        case DistributionKind::PD: return {kiruna};
        case DistributionKind::MD: return {miyun, kashi, sanya, kiruna};
    }
    return {};
}

bool on_size_grid(DistributionKind kind, int n_oid) {
    if (kind == DistributionKind::MD)
        return n_oid >= 100 && n_oid <= 1000 && n_oid % 100 == 0;
    return n_oid >= 50 && n_oid <= 500 && n_oid % 50 == 0;
}

Instance generate_instance(DistributionKind kind, int n_oid, std::uint64_t seed) {
    if (n_oid <= 0) throw std::invalid_argument("n_oid must be positive");

    Instance inst;
    inst.satellites = builtin_satellites();
    inst.stations = builtin_stations(kind);
    inst.vtws = compute_vtws(inst.satellites, inst.stations, inst.horizon_start_s,
                             inst.horizon_end_s, 10.0, 2.0 * inst.sigma_s);

    Rng rng(seed ^ (0x5a17ull + static_cast<std::uint64_t>(kind)));
    const long budget = 100L * n_oid;
    long draws = 0;
    while (static_cast<int>(inst.oids.size()) < n_oid) {
        if (draws++ >= budget)
            throw GenerationError("insufficient visibility: only " +
                                  std::to_string(inst.oids.size()) + " of " +
                                  std::to_string(n_oid) + " valid OIDs after " +
                                  std::to_string(budget) + " draws");
        const Satellite& sat = inst.satellites[rng.uniform_index(inst.satellites.size())];
        double lo = 0.0, hi = 0.0;
        class_duration_range(satellite_class(sat), lo, hi);

        OriginalImageData t;
        t.id = static_cast<int>(inst.oids.size()) + 1;
        t.priority = rng.uniform_int(1, 10);
        t.duration_s = rng.uniform(lo, hi);
        t.release_s = rng.uniform(-86400.0, 86400.0);
        t.due_h = due_time_hours(t.priority);
        t.satellite = sat.id;

        // keep only OIDs valid in the scheduling horizon
        if (candidate_window_indices(t, inst.vtws).empty()) continue;
        inst.oids.push_back(t);
    }
    return inst;
}

}  // namespace downlink
