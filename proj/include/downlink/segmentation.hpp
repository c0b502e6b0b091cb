// First-stage cutting of original image data into segments. Produces the
// image-data set NT that the scheduler works on: every playback-infeasible
// OID is dropped, small OIDs pass through whole, the rest are cut by the
// selected strategy with every segment no smaller than msid.

#pragma once

#include <cstdint>

#include "downlink/core.hpp"
#include "downlink/rng.hpp"

namespace downlink {

enum class SegmentationStrategy { Minimum, Stochastic, None };

const char* to_string(SegmentationStrategy s);
SegmentationStrategy parse_strategy(const std::string& s);

struct SegmentationCounts {
    int ns = 0;       // floor(d / msid)
    double rs = 0.0;  // d - ns * msid, in [0, msid)
};

SegmentationCounts segmentation_counts(double duration_s, double msid_s);

// Cuts t into exactly floor(d/msid) equal segments of d/NS seconds each
// (msid plus an even share of the remainder). Requires segmental(t, msid);
// throws std::invalid_argument otherwise. Segment ids are assigned by the
// caller; here they are left 0.
std::vector<ImageData> minimum_segment(const OriginalImageData& t, double msid_s);

// Random cut: k uniform in [2, floor(d/msid)] parts, each >= msid, summing
// to d (uniform simplex sample rescaled into the feasible box).
std::vector<ImageData> stochastic_segment(const OriginalImageData& t, double msid_s, Rng& rng);

// Algorithm-1 style pipeline over the whole OID set. The result is sorted by
// (release, family, id) and ids run 1..n in (family, segment index) order.
std::vector<ImageData> build_nt(const Instance& inst, SegmentationStrategy strategy,
                                std::uint64_t seed);

}  // namespace downlink
