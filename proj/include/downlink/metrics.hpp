// Quality indicators: exact hypervolume (slicing-objectives style), a
// Monte-Carlo hypervolume estimate used as an independent oracle, Pareto
// front extraction, and the per-satellite-class single success rate.

#pragma once

#include "downlink/instance_builder.hpp"
#include "downlink/rng.hpp"
#include "downlink/schedule.hpp"

namespace downlink {

using Point = std::vector<double>;

// Exact dominated hypervolume under minimization. Every point must weakly
// dominate ref (coordinates may touch ref within 1e-12 and contribute zero
// measure); otherwise std::domain_error. 2 objectives run the closed-form
// sweep; 3..4 run the recursive slicing.
double hypervolume(const std::vector<Point>& front, const Point& ref);

// Closed-form 2D sweep, exposed separately so it can cross-check the
// dimension-general slicing path.
double hypervolume_2d(const std::vector<Point>& front, const Point& ref);

// Dimension-general slicing without the 2D dispatch (oracle route).
double hypervolume_sliced(const std::vector<Point>& front, const Point& ref);

// Convenience overload for objective vectors against a (fr, st) ref.
double hypervolume(const std::vector<ObjectiveVector>& front, const ObjectiveVector& ref);

struct HvEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

// Fraction of uniform samples in the [ideal, ref] box dominated by the
// front, scaled by the box volume. n_samples must be positive.
HvEstimate hv_monte_carlo(const std::vector<Point>& front, const Point& ref,
                          long n_samples, Rng& rng);

// Mutually nondominated subset (first front), preserving first occurrences.
std::vector<ObjectiveVector> pareto_front(const std::vector<ObjectiveVector>& points);

// Scheduled fraction of the OIDs whose satellite belongs to the class;
// 0 when the class is empty.
double single_success_rate(const Schedule& s, const DecodeContext& ctx, SatelliteClass cls);

struct FrontSummary {
    std::vector<ObjectiveVector> points;  // nondominated
    double hv = 0.0;
    double fr_min = 0.0, fr_mean = 0.0, fr_max = 0.0;
    double st_min = 0.0, st_mean = 0.0, st_max = 0.0;
};

// Nondominated subset of the archive with hv against (1,1) and the six
// FR/ST statistics. Throws on an empty archive.
FrontSummary summarize_front(const std::vector<ObjectiveVector>& archive,
                             ObjectiveVector ref = {1.0, 1.0});

}  // namespace downlink
