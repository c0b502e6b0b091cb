#include "downlink/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace downlink {

const char* to_string(SegmentationStrategy s) {
    switch (s) {
        case SegmentationStrategy::Minimum: return "min";
        case SegmentationStrategy::Stochastic: return "stoch";
        case SegmentationStrategy::None: return "none";
    }
    return "?";
}

SegmentationStrategy parse_strategy(const std::string& s) {
    if (s == "min" || s == "minimum") return SegmentationStrategy::Minimum;
    if (s == "stoch" || s == "stochastic") return SegmentationStrategy::Stochastic;
    if (s == "none") return SegmentationStrategy::None;
    throw std::invalid_argument("unknown segmentation strategy: " + s);
}

SegmentationCounts segmentation_counts(double duration_s, double msid_s) {
    if (duration_s <= 0.0 || msid_s <= 0.0)
        throw std::invalid_argument("durations must be positive");
    const int ns = static_cast<int>(std::floor(duration_s / msid_s));
    return {ns, duration_s - ns * msid_s};
}

namespace {

ImageData inherit(const OriginalImageData& t, double nd) {
    ImageData s;
    s.family = t.id;
    s.priority = t.priority;
    s.release_s = t.release_s;
    s.due_h = t.due_h;
    s.nd_s = nd;
    s.satellite = t.satellite;
    return s;
}

}  // namespace

std::vector<ImageData> minimum_segment(const OriginalImageData& t, double msid_s) {
    if (!segmental(t, msid_s))
        throw std::invalid_argument("minimum_segment called on non-segmental OID " +
                                    std::to_string(t.id));
    const int ns = segmentation_counts(t.duration_s, msid_s).ns;
    // msid + rs/ns per segment, i.e. an equal d/ns share
    std::vector<ImageData> out(ns, inherit(t, t.duration_s / ns));
    return out;
}

std::vector<ImageData> stochastic_segment(const OriginalImageData& t, double msid_s, Rng& rng) {
    if (!segmental(t, msid_s))
        throw std::invalid_argument("stochastic_segment called on non-segmental OID " +
                                    std::to_string(t.id));
    const int max_k = segmentation_counts(t.duration_s, msid_s).ns;
    const int k = rng.uniform_int(2, max_k);
    const double extra = t.duration_s - k * msid_s;  // >= 0 by choice of k

    // uniform point on the k-simplex scaled to the spare duration
    std::vector<double> weights(k);
    double total = 0.0;
    for (double& w : weights) {
        w = -std::log(1.0 - rng.uniform());
        total += w;
    }
    std::vector<ImageData> out;
    out.reserve(k);
    for (int i = 0; i < k; ++i) out.push_back(inherit(t, msid_s + extra * weights[i] / total));
    return out;
}

std::vector<ImageData> build_nt(const Instance& inst, SegmentationStrategy strategy,
                                std::uint64_t seed) {
    Rng rng(seed ^ 0x5e97e9ull);
    std::vector<ImageData> nt;
    for (const OriginalImageData& t : inst.oids) {
        const auto cands = candidate_windows(t, inst.vtws);
        if (!playback_feasible(t, cands, inst.rp, inst.playback_uses_rp)) continue;  // abandoned

        std::vector<ImageData> parts;
        if (strategy == SegmentationStrategy::None || !segmental(t, inst.msid_s)) {
            parts.push_back({0, t.id, t.priority, t.release_s, t.due_h, t.duration_s, t.satellite});
        } else if (strategy == SegmentationStrategy::Minimum) {
            parts = minimum_segment(t, inst.msid_s);
        } else {
            parts = stochastic_segment(t, inst.msid_s, rng);
        }
        for (ImageData& p : parts) {
            p.id = static_cast<int>(nt.size()) + 1;
            nt.push_back(p);
        }
    }
    // encoding order: by release time, families kept contiguous
    std::stable_sort(nt.begin(), nt.end(), [](const ImageData& a, const ImageData& b) {
        if (a.release_s != b.release_s) return a.release_s < b.release_s;
        if (a.family != b.family) return a.family < b.family;
        return a.id < b.id;
    });
    return nt;
}

}  // namespace downlink
