// The bi-objective evaluation: priority-and-duration weighted transmission
// failure rate (f1) and the normalized per-OID segmentation-times count (f2).

#pragma once

#include "downlink/schedule.hpp"

namespace downlink {

// 1 - sum(x_i * w_i * d_i) / sum(w_i * d_i); throws when the OID set is empty.
double failure_rate(const Schedule& s, const DecodeContext& ctx);

// Distinct missions that carry any part of the OID's family.
int segmentation_count(const Schedule& s, int oid_idx, const DecodeContext& ctx);

// floor(max d / msid); throws when the OID set is empty.
int max_segmentation_times(const std::vector<OriginalImageData>& oids, double msid_s);

// sum over scheduled OIDs of their mission counts, normalized by n_t * M_st.
double segmentation_objective(const Schedule& s, const DecodeContext& ctx);

ObjectiveVector evaluate(const Schedule& s, const DecodeContext& ctx);

}  // namespace downlink
