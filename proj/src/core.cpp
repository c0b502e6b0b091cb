#include "downlink/core.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace downlink {

double due_time_hours(int priority) {
    if (priority < 1 || priority > 10)
        throw std::domain_error("priority out of range [1,10]: " + std::to_string(priority));
    if (priority <= 3) return 24.0;
    if (priority <= 6) return 12.0;
    if (priority <= 9) return 6.0;
    return 3.0;
}

std::vector<int> candidate_window_indices(const OriginalImageData& t,
                                          const std::vector<VisibleTimeWindow>& w) {
    std::vector<int> out;
    const double expiry = t.release_s + 3600.0 * t.due_h;
    for (int i = 0; i < static_cast<int>(w.size()); ++i) {
        const VisibleTimeWindow& v = w[i];
        if (v.satellite == t.satellite && v.sw >= t.release_s && v.sw < expiry)
            out.push_back(i);
    }
    return out;
}

std::vector<VisibleTimeWindow> candidate_windows(const OriginalImageData& t,
                                                 const std::vector<VisibleTimeWindow>& w) {
    std::vector<VisibleTimeWindow> out;
    for (int i : candidate_window_indices(t, w)) out.push_back(w[i]);
    return out;
}

bool playback_feasible(const OriginalImageData& t,
                       const std::vector<VisibleTimeWindow>& candidates,
                       double rp, bool use_rp) {
    double capacity = 0.0;
    for (const VisibleTimeWindow& v : candidates) capacity += v.length();
    const double need = use_rp ? t.duration_s * rp : t.duration_s;
    return need <= capacity;
}

bool segmental(const OriginalImageData& t, double msid_s) {
    return t.duration_s > 2.0 * msid_s;
}

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("instance invariant violated: " + what);
}

}  // namespace

void check_instance(const Instance& inst) {
    if (inst.rp <= 0.0) fail("rp must be positive");
    if (inst.msid_s <= 0.0) fail("msid must be positive");
    if (inst.sigma_s < 0.0) fail("sigma must be non-negative");
    if (!(inst.horizon_start_s < inst.horizon_end_s)) fail("empty horizon");

    std::set<int> sat_ids;
    for (const Satellite& s : inst.satellites) {
        if (!sat_ids.insert(s.id).second) fail("duplicate satellite id " + std::to_string(s.id));
        if (s.semi_major_axis_km <= 6378.0) fail("satellite " + std::to_string(s.id) + " below earth radius");
        if (s.eccentricity < 0.0 || s.eccentricity >= 1.0) fail("satellite " + std::to_string(s.id) + " eccentricity");
        for (double a : {s.inclination_deg, s.raan_deg, s.arg_perigee_deg, s.mean_anomaly_deg})
            if (a < 0.0 || a >= 360.0) fail("satellite " + std::to_string(s.id) + " angle out of [0,360)");
    }
    std::set<int> sta_ids;
    for (const GroundStation& g : inst.stations) {
        if (!sta_ids.insert(g.id).second) fail("duplicate station id " + std::to_string(g.id));
        if (std::fabs(g.latitude_deg) > 90.0) fail("station " + std::to_string(g.id) + " latitude");
        if (std::fabs(g.longitude_deg) > 180.0) fail("station " + std::to_string(g.id) + " longitude");
        if (g.min_elevation_deg < 0.0 || g.min_elevation_deg >= 90.0) fail("station " + std::to_string(g.id) + " min elevation");
    }
    std::set<int> oid_ids;
    for (const OriginalImageData& t : inst.oids) {
        if (!oid_ids.insert(t.id).second) fail("duplicate oid id " + std::to_string(t.id));
        if (t.duration_s <= 0.0) fail("oid " + std::to_string(t.id) + " duration must be positive");
        if (t.priority < 1 || t.priority > 10) fail("oid " + std::to_string(t.id) + " priority out of [1,10]");
        if (t.due_h != due_time_hours(t.priority)) fail("oid " + std::to_string(t.id) + " due time inconsistent with priority");
        if (!sat_ids.count(t.satellite)) fail("oid " + std::to_string(t.id) + " references unknown satellite");
    }
    std::set<int> vtw_ids;
    double prev_sw = -1e300;
    for (const VisibleTimeWindow& v : inst.vtws) {
        if (v.id < 0) fail("window id must be non-negative, got " + std::to_string(v.id));
        if (!vtw_ids.insert(v.id).second) fail("duplicate window id " + std::to_string(v.id));
        if (!(v.sw < v.ew)) fail("window " + std::to_string(v.id) + " has ew <= sw");
        if (v.sw < prev_sw) fail("window " + std::to_string(v.id) + " breaks sw ordering");
        if (!sat_ids.count(v.satellite)) fail("window " + std::to_string(v.id) + " references unknown satellite");
        if (!sta_ids.count(v.station)) fail("window " + std::to_string(v.id) + " references unknown station");
        prev_sw = v.sw;
    }
}

}  // namespace downlink
