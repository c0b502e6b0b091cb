// Core domain model for the satellite image data downlink scheduler:
// satellites, ground stations, image data, visible time windows, downlink
// missions, and the pure predicates every other component builds on.
//
// Conventions: all times are seconds relative to the scheduling epoch
// (horizon start), stored as double. Due times are kept in hours and
// converted where used. Angles are degrees. All types are immutable value
// types once constructed; every free function here is pure.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace downlink {

struct Satellite {
    int id = 0;
    std::string name;            // catalog name, e.g. "GF0101"; class prefix GF/SV/ZY
    double semi_major_axis_km = 0.0;
    double eccentricity = 0.0;
    double inclination_deg = 0.0;
    double raan_deg = 0.0;
    double arg_perigee_deg = 0.0;
    double mean_anomaly_deg = 0.0;  // mean anomaly at epoch

    friend bool operator==(const Satellite&, const Satellite&) = default;
};

struct GroundStation {
    int id = 0;
    std::string name;
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    double altitude_km = 0.0;
    double min_elevation_deg = 5.0;  // collapsed antenna limit

    friend bool operator==(const GroundStation&, const GroundStation&) = default;
};

// An original image data (OID): the product of one observation.
struct OriginalImageData {
    int id = 0;
    int priority = 1;        // omega, integer in [1,10]
    double release_s = 0.0;  // may precede horizon start by up to 24 h
    double due_h = 24.0;     // due time in hours, tied to priority
    double duration_s = 0.0; // observation duration d
    int satellite = 0;

    friend bool operator==(const OriginalImageData&, const OriginalImageData&) = default;
};

struct VisibleTimeWindow {
    int id = 0;
    double sw = 0.0;  // start, seconds
    double ew = 0.0;  // end, seconds
    int satellite = 0;
    int station = 0;

    double length() const { return ew - sw; }

    friend bool operator==(const VisibleTimeWindow&, const VisibleTimeWindow&) = default;
};

// A segment of an OID (or a whole OID passed through unsegmented).
// family is the id of the source OID; nd is this segment's share of the
// observation duration.
struct ImageData {
    int id = 0;
    int family = 0;
    int priority = 1;
    double release_s = 0.0;
    double due_h = 24.0;
    double nd_s = 0.0;
    int satellite = 0;

    friend bool operator==(const ImageData&, const ImageData&) = default;
};

struct DownlinkMission {
    int id = 0;
    int window = 0;            // VTW id
    double start_s = 0.0;      // st
    double work_s = 0.0;       // w = rp * sum(nd) over payload
    std::vector<int> payload;  // ImageData ids, sorted ascending
    int satellite = 0;
    int station = 0;

    friend bool operator==(const DownlinkMission&, const DownlinkMission&) = default;
};

// Bi-objective value (failure rate, segmentation times), both minimized and
// normalized into [0,1].
struct ObjectiveVector {
    double fr = 1.0;
    double st = 0.0;

    friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

// a dominates b under minimization: no worse in both, better in one.
inline bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    return a.fr <= b.fr && a.st <= b.st && (a.fr < b.fr || a.st < b.st);
}

// The immutable problem input.
struct Instance {
    std::string epoch = "2020-10-15T00:00:00Z";
    double horizon_start_s = 0.0;
    double horizon_end_s = 86400.0;
    double rp = 4.0;      // recording-and-playback ratio
    double msid_s = 10.0; // minimum size of image data
    double sigma_s = 60.0; // station set-up time between satellites
    bool playback_uses_rp = false; // opt-in: playback need counted as d*rp
    std::vector<Satellite> satellites;
    std::vector<GroundStation> stations;
    std::vector<OriginalImageData> oids;
    std::vector<VisibleTimeWindow> vtws;

    friend bool operator==(const Instance&, const Instance&) = default;
};

// Eq-5 style priority-to-due-time table. Throws std::domain_error when the
// priority is outside [1,10].
double due_time_hours(int priority);

// Windows able to serve t: same satellite, sw >= release, sw < release + due.
// W must be sorted by sw ascending; order is preserved in the result.
std::vector<VisibleTimeWindow> candidate_windows(const OriginalImageData& t,
                                                 const std::vector<VisibleTimeWindow>& w);

// Index variant used on hot paths; returns indices into w.
std::vector<int> candidate_window_indices(const OriginalImageData& t,
                                          const std::vector<VisibleTimeWindow>& w);

// Total-window-sufficiency predicate: t can be fully played back through its
// candidate windows. need = d (literal form) or d*rp when use_rp is set.
bool playback_feasible(const OriginalImageData& t,
                       const std::vector<VisibleTimeWindow>& candidates,
                       double rp = 4.0, bool use_rp = false);

// Over-segmentation guard: t may be segmented only when d > 2*msid (strict).
bool segmental(const OriginalImageData& t, double msid_s);

// Structural sanity of an instance; throws std::invalid_argument on the first
// violated invariant (duplicate window ids, unsorted windows, bad ranges...).
void check_instance(const Instance& inst);

}  // namespace downlink
