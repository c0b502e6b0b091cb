#include "downlink/objectives.hpp"

#include <cmath>
#include <stdexcept>

namespace downlink {

double failure_rate(const Schedule& s, const DecodeContext& ctx) {
    const auto& oids = ctx.instance().oids;
    if (oids.empty()) throw std::domain_error("failure_rate needs a nonempty OID set");
    double total = 0.0, served = 0.0;
    for (int i = 0; i < ctx.oid_count(); ++i) {
        const double w = ctx.priority_weight(i);
        total += w;
        if (s.scheduled[i]) served += w;
    }
    return 1.0 - served / total;
}

int segmentation_count(const Schedule& s, int oid_idx, const DecodeContext& ctx) {
    int count = 0;
    for (const DownlinkMission& m : s.missions) {
        for (int id : m.payload) {
            const int j = ctx.nt_index(id);
            if (j >= 0 && ctx.family_of(j) == oid_idx) {
                ++count;
                break;  // a mission counts once per family
            }
        }
    }
    return count;
}

int max_segmentation_times(const std::vector<OriginalImageData>& oids, double msid_s) {
    if (oids.empty()) throw std::domain_error("max_segmentation_times needs a nonempty OID set");
    double max_d = 0.0;
    for (const auto& t : oids) max_d = std::max(max_d, t.duration_s);
    return static_cast<int>(std::floor(max_d / msid_s));
}

double segmentation_objective(const Schedule& s, const DecodeContext& ctx) {
    const auto& oids = ctx.instance().oids;
    const int m_st = max_segmentation_times(oids, ctx.instance().msid_s);

    // count distinct missions per family in one sweep
    std::vector<int> counts(ctx.oid_count(), 0);
    std::vector<int> stamp(ctx.oid_count(), -1);
    for (std::size_t mi = 0; mi < s.missions.size(); ++mi) {
        for (int id : s.missions[mi].payload) {
            const int j = ctx.nt_index(id);
            if (j < 0) continue;
            const int fam = ctx.family_of(j);
            if (stamp[fam] != static_cast<int>(mi)) {
                stamp[fam] = static_cast<int>(mi);
                ++counts[fam];
            }
        }
    }
    double sum = 0.0;
    for (int i = 0; i < ctx.oid_count(); ++i)
        if (s.scheduled[i]) sum += counts[i];
    return sum / (static_cast<double>(oids.size()) * m_st);
}

ObjectiveVector evaluate(const Schedule& s, const DecodeContext& ctx) {
    return {failure_rate(s, ctx), segmentation_objective(s, ctx)};
}

}  // namespace downlink
