// Chromosome decoding and constraint validation. decode() is the only place
// a chromosome becomes a mission plan, and validate_schedule() is the single
// authority on what feasible means.
//
// Packing rule: a mission always starts at its window's sw and lasts exactly
// rp * sum(nd) of its payload. Decode repairs rather than fails: a family
// with a missing or invalid assignment, or one evicted by capacity or timing
// conflicts, is wholly unscheduled (all-or-nothing).

#pragma once

#include <optional>
#include <set>
#include <string>
#include <unordered_map>

#include "downlink/core.hpp"

namespace downlink {

inline constexpr int kUnassigned = -1;

// Two-stage encoding: one scheduled bit per OID, one window id (or
// kUnassigned) per image data.
struct Chromosome {
    std::vector<std::uint8_t> scheduled;  // indexed like Instance::oids
    std::vector<int> assignment;          // indexed like the nt list; VTW ids

    friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

struct Schedule {
    std::vector<DownlinkMission> missions;   // ordered by window sw
    std::vector<std::uint8_t> scheduled;     // x_i per OID index
    std::optional<ObjectiveVector> objectives;

    friend bool operator==(const Schedule& a, const Schedule& b) {
        return a.missions == b.missions && a.scheduled == b.scheduled;
    }
};

enum class ViolationKind {
    Uniqueness,
    Capacity,
    SetupTime,
    SatelliteOverlap,
    FamilyIncomplete,
    WindowReuse,
};

const char* to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::vector<int> subjects;  // offending ids (image data / mission / window / oid)
    std::string detail;
};

// Index structures shared by decode, validation and the search operators.
// Built once per (instance, nt) pair; immutable afterwards.
class DecodeContext {
public:
    DecodeContext(const Instance& inst, std::vector<ImageData> nt);

    const Instance& instance() const { return *inst_; }
    const std::vector<ImageData>& nt() const { return nt_; }
    int oid_count() const { return static_cast<int>(inst_->oids.size()); }
    int nt_count() const { return static_cast<int>(nt_.size()); }
    int window_count() const { return static_cast<int>(inst_->vtws.size()); }

    // -1 when the id is unknown
    int oid_index(int oid_id) const;
    int window_index(int window_id) const;
    int nt_index(int nt_id) const;

    int family_of(int nt_idx) const { return family_oid_idx_[nt_idx]; }
    const std::vector<int>& family_segments(int oid_idx) const { return family_segments_[oid_idx]; }
    // candidate window indices of an OID, in global window order
    const std::vector<int>& oid_candidates(int oid_idx) const { return oid_candidates_[oid_idx]; }
    bool is_candidate(int oid_idx, int window_idx) const;

    double playback_seconds(int nt_idx) const { return playback_s_[nt_idx]; }  // rp * nd
    double priority_weight(int oid_idx) const { return weight_[oid_idx]; }     // omega * d

    // station/satellite neighborhoods as dense indices
    int station_count() const { return static_cast<int>(inst_->stations.size()); }
    int satellite_count() const { return static_cast<int>(inst_->satellites.size()); }
    int window_station(int window_idx) const { return window_station_[window_idx]; }
    int window_satellite(int window_idx) const { return window_satellite_[window_idx]; }
    const std::vector<int>& station_windows(int station_dense) const { return station_windows_[station_dense]; }
    const std::vector<int>& satellite_windows(int sat_dense) const { return satellite_windows_[sat_dense]; }
    int window_station_pos(int window_idx) const { return window_station_pos_[window_idx]; }
    int window_satellite_pos(int window_idx) const { return window_satellite_pos_[window_idx]; }

private:
    const Instance* inst_;
    std::vector<ImageData> nt_;
    std::unordered_map<int, int> oid_idx_, window_idx_, nt_idx_, station_idx_, satellite_idx_;
    std::vector<int> family_oid_idx_;
    std::vector<std::vector<int>> family_segments_;
    std::vector<std::vector<int>> oid_candidates_;
    std::vector<double> playback_s_, weight_;
    std::vector<int> window_station_, window_satellite_;
    std::vector<std::vector<int>> station_windows_, satellite_windows_;
    std::vector<int> window_station_pos_, window_satellite_pos_;
};

// Chromosome -> feasible Schedule, repairing invalid or conflicting families.
// Throws std::invalid_argument when the chromosome shape does not match ctx.
Schedule decode(const Chromosome& ch, const DecodeContext& ctx);

// Schedule -> canonical chromosome (assignments read back from missions).
Chromosome re_encode(const Schedule& s, const DecodeContext& ctx);

// Empty list iff s satisfies every constraint. Violations are data.
std::vector<Violation> validate_schedule(const Schedule& s, const DecodeContext& ctx);

// rp * sum(nd) carried by the mission in the given window, 0 when unused.
// Throws std::domain_error for an unknown window id.
double window_load(const Schedule& s, int window_id, const DecodeContext& ctx);

// Mutable mirror of a feasible schedule that can answer "would this move
// stay feasible" in O(log) and apply it incrementally. Used by the search
// operators; decoding the resulting chromosome reproduces the same plan.
class PlanState {
public:
    PlanState(const DecodeContext& ctx, const Schedule& from);

    bool is_active(int oid_idx) const { return active_[oid_idx]; }
    int assignment(int nt_idx) const { return assign_[nt_idx]; }  // window idx or kUnassigned
    double load(int window_idx) const { return load_[window_idx]; }
    double residual(int window_idx) const;

    // Feasibility of adding nt_idx to window_idx under the packing rule.
    // Candidate-set membership is the caller's concern.
    bool can_place(int nt_idx, int window_idx) const;
    void place(int nt_idx, int window_idx);
    void unplace(int nt_idx);
    void set_active(int oid_idx, bool active) { active_[oid_idx] = active; }
    void unschedule_family(int oid_idx);

    // Canonical chromosome for the current state.
    Chromosome to_chromosome() const;

private:
    void recompute_load(int window_idx);

    const DecodeContext* ctx_;
    std::vector<std::uint8_t> active_;
    std::vector<int> assign_;
    std::vector<std::vector<int>> members_;  // per window, nt indices ascending
    std::vector<double> load_;
    std::vector<std::set<int>> used_station_;    // positions in station_windows lists
    std::vector<std::set<int>> used_satellite_;  // positions in satellite_windows lists
};

}  // namespace downlink
