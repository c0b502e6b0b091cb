#include "downlink/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace downlink {

namespace {

// Validation compares times leniently; decode itself packs exactly.
constexpr double kTimeTol = 1e-9;
constexpr double kFamilyTol = 1e-9;

}  // namespace

const char* to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::Uniqueness: return "Uniqueness";
        case ViolationKind::Capacity: return "Capacity";
        case ViolationKind::SetupTime: return "SetupTime";
        case ViolationKind::SatelliteOverlap: return "SatelliteOverlap";
        case ViolationKind::FamilyIncomplete: return "FamilyIncomplete";
        case ViolationKind::WindowReuse: return "WindowReuse";
    }
    return "?";
}

DecodeContext::DecodeContext(const Instance& inst, std::vector<ImageData> nt)
    : inst_(&inst), nt_(std::move(nt)) {
    for (int i = 0; i < static_cast<int>(inst.oids.size()); ++i) oid_idx_[inst.oids[i].id] = i;
    for (int i = 0; i < static_cast<int>(inst.vtws.size()); ++i) window_idx_[inst.vtws[i].id] = i;
    for (int i = 0; i < static_cast<int>(inst.stations.size()); ++i) station_idx_[inst.stations[i].id] = i;
    for (int i = 0; i < static_cast<int>(inst.satellites.size()); ++i) satellite_idx_[inst.satellites[i].id] = i;

    family_oid_idx_.resize(nt_.size());
    family_segments_.resize(inst.oids.size());
    playback_s_.resize(nt_.size());
    for (int j = 0; j < static_cast<int>(nt_.size()); ++j) {
        nt_idx_[nt_[j].id] = j;
        auto it = oid_idx_.find(nt_[j].family);
        if (it == oid_idx_.end())
            throw std::invalid_argument("image data " + std::to_string(nt_[j].id) +
                                        " references unknown OID " + std::to_string(nt_[j].family));
        family_oid_idx_[j] = it->second;
        family_segments_[it->second].push_back(j);
        playback_s_[j] = inst.rp * nt_[j].nd_s;
    }

    oid_candidates_.resize(inst.oids.size());
    weight_.resize(inst.oids.size());
    for (int i = 0; i < static_cast<int>(inst.oids.size()); ++i) {
        oid_candidates_[i] = candidate_window_indices(inst.oids[i], inst.vtws);
        weight_[i] = inst.oids[i].priority * inst.oids[i].duration_s;
    }

    window_station_.resize(inst.vtws.size());
    window_satellite_.resize(inst.vtws.size());
    window_station_pos_.resize(inst.vtws.size());
    window_satellite_pos_.resize(inst.vtws.size());
    station_windows_.resize(inst.stations.size());
    satellite_windows_.resize(inst.satellites.size());
    for (int w = 0; w < static_cast<int>(inst.vtws.size()); ++w) {
        window_station_[w] = station_idx_.at(inst.vtws[w].station);
        window_satellite_[w] = satellite_idx_.at(inst.vtws[w].satellite);
        window_station_pos_[w] = static_cast<int>(station_windows_[window_station_[w]].size());
        window_satellite_pos_[w] = static_cast<int>(satellite_windows_[window_satellite_[w]].size());
        station_windows_[window_station_[w]].push_back(w);
        satellite_windows_[window_satellite_[w]].push_back(w);
    }
}

int DecodeContext::oid_index(int oid_id) const {
    auto it = oid_idx_.find(oid_id);
    return it == oid_idx_.end() ? -1 : it->second;
}

int DecodeContext::window_index(int window_id) const {
    auto it = window_idx_.find(window_id);
    return it == window_idx_.end() ? -1 : it->second;
}

int DecodeContext::nt_index(int nt_id) const {
    auto it = nt_idx_.find(nt_id);
    return it == nt_idx_.end() ? -1 : it->second;
}

bool DecodeContext::is_candidate(int oid_idx, int window_idx) const {
    const auto& c = oid_candidates_[oid_idx];
    return std::binary_search(c.begin(), c.end(), window_idx);
}

namespace {

// Shared by decode and PlanState so both sides see bit-identical loads:
// the mission load is always the sum of rp*nd in ascending nt-index order.
double canonical_load(const std::vector<int>& members, const DecodeContext& ctx) {
    double s = 0.0;
    for (int j : members) s += ctx.playback_seconds(j);
    return s;
}

}  // namespace

Schedule decode(const Chromosome& ch, const DecodeContext& ctx) {
    if (static_cast<int>(ch.scheduled.size()) != ctx.oid_count() ||
        static_cast<int>(ch.assignment.size()) != ctx.nt_count())
        throw std::invalid_argument("chromosome shape does not match instance/nt");

    const auto& win = ctx.instance().vtws;
    const double sigma = ctx.instance().sigma_s;
    const int nw = ctx.window_count();

    // Stage-1/2 resolution: a family is active only when every segment has a
    // valid candidate-window assignment.
    std::vector<std::uint8_t> active(ctx.oid_count(), 0);
    std::vector<int> assign(ctx.nt_count(), kUnassigned);  // window indices
    for (int i = 0; i < ctx.oid_count(); ++i) {
        if (!ch.scheduled[i]) continue;
        const auto& fam = ctx.family_segments(i);
        if (fam.empty()) continue;  // dropped at segmentation, cannot transmit
        bool ok = true;
        for (int j : fam) {
            const int wid = ch.assignment[j];
            const int widx = wid == kUnassigned ? -1 : ctx.window_index(wid);
            if (widx < 0 || !ctx.is_candidate(i, widx)) {
                ok = false;
                break;
            }
            assign[j] = widx;
        }
        if (ok) {
            active[i] = 1;
        } else {
            for (int j : fam) assign[j] = kUnassigned;
        }
    }

    std::vector<std::vector<int>> members(nw);
    for (int j = 0; j < ctx.nt_count(); ++j)
        if (assign[j] != kUnassigned && active[ctx.family_of(j)]) members[assign[j]].push_back(j);

    std::vector<double> load(nw, 0.0);
    for (int w = 0; w < nw; ++w) load[w] = canonical_load(members[w], ctx);

    auto evict_family = [&](int oid_idx) {
        active[oid_idx] = 0;
        for (int j : ctx.family_segments(oid_idx)) {
            const int w = assign[j];
            if (w == kUnassigned) continue;
            auto& m = members[w];
            m.erase(std::lower_bound(m.begin(), m.end(), j));
            assign[j] = kUnassigned;
            load[w] = canonical_load(m, ctx);
        }
    };

    // Capacity repair: evict the least omega*d family first (ties by index).
    for (int w = 0; w < nw; ++w) {
        while (load[w] > win[w].length()) {
            int victim = -1;
            double victim_weight = std::numeric_limits<double>::infinity();
            int prev_fam = -1;
            for (int j : members[w]) {
                const int fam = ctx.family_of(j);
                if (fam == prev_fam) continue;
                prev_fam = fam;
                if (ctx.priority_weight(fam) < victim_weight ||
                    (ctx.priority_weight(fam) == victim_weight && fam < victim)) {
                    victim = fam;
                    victim_weight = ctx.priority_weight(fam);
                }
            }
            evict_family(victim);
        }
    }

    // Forward timing pass in window (sw) order: a mission conflicting with an
    // already accepted one loses all its families.
    std::vector<std::vector<int>> acc_station(ctx.station_count());
    std::vector<std::vector<int>> acc_satellite(ctx.satellite_count());
    auto last_live = [&](const std::vector<int>& acc) {
        for (auto it = acc.rbegin(); it != acc.rend(); ++it)
            if (load[*it] > 0.0) return *it;
        return -1;
    };
    for (int w = 0; w < nw; ++w) {
        if (load[w] <= 0.0) continue;
        const double st = win[w].sw;
        bool ok = true;
        const int ps = last_live(acc_station[ctx.window_station(w)]);
        if (ps >= 0 && ctx.window_satellite(ps) != ctx.window_satellite(w) &&
            !((win[ps].sw + load[ps]) + sigma <= st))
            ok = false;
        if (ok) {
            const int pv = last_live(acc_satellite[ctx.window_satellite(w)]);
            if (pv >= 0 && !(win[pv].sw + load[pv] <= st)) ok = false;
        }
        if (ok) {
            acc_station[ctx.window_station(w)].push_back(w);
            acc_satellite[ctx.window_satellite(w)].push_back(w);
        } else {
            while (!members[w].empty()) evict_family(ctx.family_of(members[w].front()));
        }
    }

    Schedule s;
    s.scheduled = active;
    int next_id = 1;
    for (int w = 0; w < nw; ++w) {
        if (load[w] <= 0.0) continue;
        DownlinkMission m;
        m.id = next_id++;
        m.window = win[w].id;
        m.start_s = win[w].sw;
        m.work_s = load[w];
        m.payload.reserve(members[w].size());
        for (int j : members[w]) m.payload.push_back(ctx.nt()[j].id);
        std::sort(m.payload.begin(), m.payload.end());
        m.satellite = win[w].satellite;
        m.station = win[w].station;
        s.missions.push_back(std::move(m));
    }
    return s;
}

Chromosome re_encode(const Schedule& s, const DecodeContext& ctx) {
    Chromosome ch;
    ch.scheduled = s.scheduled;
    ch.assignment.assign(ctx.nt_count(), kUnassigned);
    for (const DownlinkMission& m : s.missions)
        for (int id : m.payload) {
            const int j = ctx.nt_index(id);
            if (j < 0) throw std::invalid_argument("payload references unknown image data " + std::to_string(id));
            ch.assignment[j] = m.window;
        }
    return ch;
}

std::vector<Violation> validate_schedule(const Schedule& s, const DecodeContext& ctx) {
    if (static_cast<int>(s.scheduled.size()) != ctx.oid_count())
        throw std::invalid_argument("schedule scheduled-bit size does not match instance");

    std::vector<Violation> out;
    const auto& win = ctx.instance().vtws;
    const double sigma = ctx.instance().sigma_s;

    // Uniqueness + transmitted-set bookkeeping.
    std::vector<int> seen(ctx.nt_count(), 0);
    for (const DownlinkMission& m : s.missions) {
        for (int id : m.payload) {
            const int j = ctx.nt_index(id);
            if (j < 0) {
                out.push_back({ViolationKind::Capacity, {m.id, id},
                               "mission " + std::to_string(m.id) + " payload references unknown image data " +
                                   std::to_string(id)});
                continue;
            }
            if (++seen[j] == 2)
                out.push_back({ViolationKind::Uniqueness, {id},
                               "image data " + std::to_string(id) + " transmitted more than once"});
        }
    }

    // Capacity / containment per mission.
    for (const DownlinkMission& m : s.missions) {
        const int w = ctx.window_index(m.window);
        if (w < 0) {
            out.push_back({ViolationKind::Capacity, {m.id, m.window},
                           "mission " + std::to_string(m.id) + " references unknown window " +
                               std::to_string(m.window)});
            continue;
        }
        double need = 0.0;
        for (int id : m.payload) {
            const int j = ctx.nt_index(id);
            if (j >= 0) need += ctx.playback_seconds(j);
        }
        const bool fits = m.work_s <= win[w].length() + kTimeTol &&
                          win[w].sw <= m.start_s + kTimeTol &&
                          m.start_s + m.work_s <= win[w].ew + kTimeTol &&
                          m.work_s + kTimeTol >= need;
        if (!fits)
            out.push_back({ViolationKind::Capacity, {m.id, m.window},
                           "mission " + std::to_string(m.id) + " does not fit window " +
                               std::to_string(m.window)});
    }

    // Set-up time and per-satellite overlap over st-sorted mission chains.
    auto sorted_by_start = [&](auto key) {
        std::vector<std::vector<const DownlinkMission*>> groups;
        std::unordered_map<int, int> pos;
        for (const DownlinkMission& m : s.missions) {
            auto [it, fresh] = pos.try_emplace(key(m), static_cast<int>(groups.size()));
            if (fresh) groups.emplace_back();
            groups[it->second].push_back(&m);
        }
        for (auto& g : groups)
            std::sort(g.begin(), g.end(), [](const DownlinkMission* a, const DownlinkMission* b) {
                if (a->start_s != b->start_s) return a->start_s < b->start_s;
                return a->id < b->id;
            });
        return groups;
    };

    for (const auto& g : sorted_by_start([](const DownlinkMission& m) { return m.station; }))
        for (std::size_t k = 1; k < g.size(); ++k) {
            const DownlinkMission *a = g[k - 1], *b = g[k];
            if (a->satellite == b->satellite) continue;
            if (a->start_s + a->work_s + sigma > b->start_s + kTimeTol)
                out.push_back({ViolationKind::SetupTime, {a->id, b->id},
                               "missions " + std::to_string(a->id) + " and " + std::to_string(b->id) +
                                   " at station " + std::to_string(a->station) +
                                   " violate the set-up gap"});
        }

    for (const auto& g : sorted_by_start([](const DownlinkMission& m) { return m.satellite; }))
        for (std::size_t k = 1; k < g.size(); ++k) {
            const DownlinkMission *a = g[k - 1], *b = g[k];
            if (a->start_s + a->work_s > b->start_s + kTimeTol)
                out.push_back({ViolationKind::SatelliteOverlap, {a->id, b->id},
                               "missions " + std::to_string(a->id) + " and " + std::to_string(b->id) +
                                   " overlap on satellite " + std::to_string(a->satellite)});
        }

    // All-or-nothing family sums.
    std::vector<double> transmitted(ctx.oid_count(), 0.0);
    for (int j = 0; j < ctx.nt_count(); ++j)
        if (seen[j] > 0) transmitted[ctx.family_of(j)] += ctx.nt()[j].nd_s;
    for (int i = 0; i < ctx.oid_count(); ++i) {
        const double expect = s.scheduled[i] ? ctx.instance().oids[i].duration_s : 0.0;
        if (std::fabs(transmitted[i] - expect) > kFamilyTol)
            out.push_back({ViolationKind::FamilyIncomplete, {ctx.instance().oids[i].id},
                           "OID " + std::to_string(ctx.instance().oids[i].id) + " transmitted " +
                               std::to_string(transmitted[i]) + " of expected " + std::to_string(expect)});
    }

    // One mission per window.
    std::unordered_map<int, int> window_use;
    for (const DownlinkMission& m : s.missions)
        if (++window_use[m.window] == 2)
            out.push_back({ViolationKind::WindowReuse, {m.window},
                           "window " + std::to_string(m.window) + " used by more than one mission"});

    return out;
}

double window_load(const Schedule& s, int window_id, const DecodeContext& ctx) {
    if (ctx.window_index(window_id) < 0)
        throw std::domain_error("unknown window id " + std::to_string(window_id));
    for (const DownlinkMission& m : s.missions) {
        if (m.window != window_id) continue;
        double need = 0.0;
        for (int id : m.payload) {
            const int j = ctx.nt_index(id);
            if (j < 0) throw std::domain_error("payload references unknown image data");
            need += ctx.playback_seconds(j);
        }
        return need;
    }
    return 0.0;
}

PlanState::PlanState(const DecodeContext& ctx, const Schedule& from) : ctx_(&ctx) {
    if (static_cast<int>(from.scheduled.size()) != ctx.oid_count())
        throw std::invalid_argument("schedule does not match context");
    active_ = from.scheduled;
    assign_.assign(ctx.nt_count(), kUnassigned);
    members_.resize(ctx.window_count());
    load_.assign(ctx.window_count(), 0.0);
    used_station_.resize(ctx.station_count());
    used_satellite_.resize(ctx.satellite_count());
    for (const DownlinkMission& m : from.missions) {
        const int w = ctx.window_index(m.window);
        if (w < 0) throw std::invalid_argument("mission references unknown window");
        for (int id : m.payload) {
            const int j = ctx.nt_index(id);
            if (j < 0) throw std::invalid_argument("mission references unknown image data");
            assign_[j] = w;
            members_[w].push_back(j);
        }
        std::sort(members_[w].begin(), members_[w].end());
        recompute_load(w);
        used_station_[ctx.window_station(w)].insert(ctx.window_station_pos(w));
        used_satellite_[ctx.window_satellite(w)].insert(ctx.window_satellite_pos(w));
    }
}

void PlanState::recompute_load(int window_idx) {
    load_[window_idx] = canonical_load(members_[window_idx], *ctx_);
}

double PlanState::residual(int window_idx) const {
    return ctx_->instance().vtws[window_idx].length() - load_[window_idx];
}

bool PlanState::can_place(int nt_idx, int window_idx) const {
    const auto& win = ctx_->instance().vtws;
    const double sigma = ctx_->instance().sigma_s;

    // Final canonical load with nt_idx merged in.
    double total = 0.0;
    bool inserted = false;
    for (int j : members_[window_idx]) {
        if (!inserted && nt_idx < j) {
            total += ctx_->playback_seconds(nt_idx);
            inserted = true;
        }
        total += ctx_->playback_seconds(j);
    }
    if (!inserted) total += ctx_->playback_seconds(nt_idx);

    if (total > win[window_idx].length()) return false;
    const double new_end = win[window_idx].sw + total;
    const bool newly_used = members_[window_idx].empty();

    const int sd = ctx_->window_station(window_idx);
    const auto& sset = used_station_[sd];
    const int spos = ctx_->window_station_pos(window_idx);
    auto sit = sset.upper_bound(spos);
    if (sit != sset.end()) {
        const int succ = ctx_->station_windows(sd)[*sit];
        if (ctx_->window_satellite(succ) != ctx_->window_satellite(window_idx) &&
            !(new_end + sigma <= win[succ].sw))
            return false;
    }
    if (newly_used) {
        auto pit = sset.lower_bound(spos);
        if (pit != sset.begin()) {
            const int pred = ctx_->station_windows(sd)[*--pit];
            if (ctx_->window_satellite(pred) != ctx_->window_satellite(window_idx) &&
                !((win[pred].sw + load_[pred]) + sigma <= win[window_idx].sw))
                return false;
        }
    }

    const int vd = ctx_->window_satellite(window_idx);
    const auto& vset = used_satellite_[vd];
    const int vpos = ctx_->window_satellite_pos(window_idx);
    auto vit = vset.upper_bound(vpos);
    if (vit != vset.end()) {
        const int succ = ctx_->satellite_windows(vd)[*vit];
        if (!(new_end <= win[succ].sw)) return false;
    }
    if (newly_used) {
        auto pit = vset.lower_bound(vpos);
        if (pit != vset.begin()) {
            const int pred = ctx_->satellite_windows(vd)[*--pit];
            if (!(win[pred].sw + load_[pred] <= win[window_idx].sw)) return false;
        }
    }
    return true;
}

void PlanState::place(int nt_idx, int window_idx) {
    auto& m = members_[window_idx];
    if (m.empty()) {
        used_station_[ctx_->window_station(window_idx)].insert(ctx_->window_station_pos(window_idx));
        used_satellite_[ctx_->window_satellite(window_idx)].insert(ctx_->window_satellite_pos(window_idx));
    }
    m.insert(std::lower_bound(m.begin(), m.end(), nt_idx), nt_idx);
    recompute_load(window_idx);
    assign_[nt_idx] = window_idx;
}

void PlanState::unplace(int nt_idx) {
    const int w = assign_[nt_idx];
    if (w == kUnassigned) return;
    auto& m = members_[w];
    m.erase(std::lower_bound(m.begin(), m.end(), nt_idx));
    assign_[nt_idx] = kUnassigned;
    if (m.empty()) {
        load_[w] = 0.0;
        used_station_[ctx_->window_station(w)].erase(ctx_->window_station_pos(w));
        used_satellite_[ctx_->window_satellite(w)].erase(ctx_->window_satellite_pos(w));
    } else {
        recompute_load(w);
    }
}

void PlanState::unschedule_family(int oid_idx) {
    for (int j : ctx_->family_segments(oid_idx)) unplace(j);
    active_[oid_idx] = 0;
}

Chromosome PlanState::to_chromosome() const {
    Chromosome ch;
    ch.scheduled = active_;
    ch.assignment.assign(ctx_->nt_count(), kUnassigned);
    for (int j = 0; j < ctx_->nt_count(); ++j)
        if (assign_[j] != kUnassigned) ch.assignment[j] = ctx_->instance().vtws[assign_[j]].id;
    return ch;
}

}  // namespace downlink
