#include "downlink/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace downlink {

namespace {

constexpr double kRefTol = 1e-12;

bool weakly_dominates(const Point& a, const Point& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

bool strictly_dominates(const Point& a, const Point& b) {
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strict = true;
    }
    return strict;
}

void check_against_ref(const std::vector<Point>& front, const Point& ref) {
    for (const Point& p : front) {
        if (p.size() != ref.size()) throw std::domain_error("point dimension mismatch");
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] > ref[i] + kRefTol) throw std::domain_error("point does not dominate the reference");
    }
}

std::vector<Point> nondominated(std::vector<Point> pts) {
    std::vector<Point> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < pts.size() && !dominated; ++j)
            if (j != i && (strictly_dominates(pts[j], pts[i]) ||
                           (pts[j] == pts[i] && j < i)))  // drop later duplicates
                dominated = true;
        if (!dominated) out.push_back(pts[i]);
    }
    return out;
}

double hv_recursive(std::vector<Point> pts, const Point& ref, std::size_t dim) {
    if (pts.empty()) return 0.0;
    if (dim == 1) {
        double best = ref[0];
        for (const Point& p : pts) best = std::min(best, p[0]);
        return std::max(0.0, ref[0] - best);
    }
    // slice along the last remaining objective
    const std::size_t d = dim - 1;
    std::sort(pts.begin(), pts.end(), [d](const Point& a, const Point& b) { return a[d] < b[d]; });
    double hv = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const double lo = pts[k][d];
        const double hi = k + 1 < pts.size() ? pts[k + 1][d] : ref[d];
        if (hi <= lo) continue;
        std::vector<Point> slab(pts.begin(), pts.begin() + k + 1);
        hv += (hi - lo) * hv_recursive(std::move(slab), ref, d);
    }
    return hv;
}

}  // namespace

double hypervolume_2d(const std::vector<Point>& front, const Point& ref) {
    if (ref.size() != 2) throw std::domain_error("hypervolume_2d needs 2 objectives");
    check_against_ref(front, ref);
    std::vector<Point> pts = nondominated(front);
    std::sort(pts.begin(), pts.end());
    double hv = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const double next_f1 = k + 1 < pts.size() ? pts[k + 1][0] : ref[0];
        hv += std::max(0.0, next_f1 - pts[k][0]) * std::max(0.0, ref[1] - pts[k][1]);
    }
    return hv;
}

double hypervolume_sliced(const std::vector<Point>& front, const Point& ref) {
    if (ref.size() < 2 || ref.size() > 4)
        throw std::domain_error("slicing supports 2 to 4 objectives");
    check_against_ref(front, ref);
    return hv_recursive(nondominated(front), ref, ref.size());
}

double hypervolume(const std::vector<Point>& front, const Point& ref) {
    if (ref.size() == 2) return hypervolume_2d(front, ref);
    return hypervolume_sliced(front, ref);
}

double hypervolume(const std::vector<ObjectiveVector>& front, const ObjectiveVector& ref) {
    std::vector<Point> pts;
    pts.reserve(front.size());
    for (const auto& p : front) pts.push_back({p.fr, p.st});
    return hypervolume(pts, Point{ref.fr, ref.st});
}

HvEstimate hv_monte_carlo(const std::vector<Point>& front, const Point& ref,
                          long n_samples, Rng& rng) {
    if (n_samples <= 0) throw std::domain_error("n_samples must be positive");
    check_against_ref(front, ref);
    if (front.empty()) return {0.0, 0.0};

    const std::size_t d = ref.size();
    Point ideal = front.front();
    for (const Point& p : front)
        for (std::size_t i = 0; i < d; ++i) ideal[i] = std::min(ideal[i], p[i]);
    double box = 1.0;
    for (std::size_t i = 0; i < d; ++i) box *= std::max(0.0, ref[i] - ideal[i]);
    if (box <= 0.0) return {0.0, 0.0};

    // 2D fast path: prefix-min of f2 over f1-sorted points
    long hits = 0;
    if (d == 2) {
        std::vector<Point> pts = front;
        std::sort(pts.begin(), pts.end());
        std::vector<double> best_f2(pts.size());
        double running = pts[0][1];
        for (std::size_t i = 0; i < pts.size(); ++i) {
            running = std::min(running, pts[i][1]);
            best_f2[i] = running;
        }
        for (long k = 0; k < n_samples; ++k) {
            const double x = ideal[0] + (ref[0] - ideal[0]) * rng.uniform();
            const double y = ideal[1] + (ref[1] - ideal[1]) * rng.uniform();
            // last point with f1 <= x
            auto it = std::upper_bound(pts.begin(), pts.end(), Point{x, 1e300});
            if (it != pts.begin() && best_f2[static_cast<std::size_t>(it - pts.begin()) - 1] <= y)
                ++hits;
        }
    } else {
        Point sample(d);
        for (long k = 0; k < n_samples; ++k) {
            for (std::size_t i = 0; i < d; ++i)
                sample[i] = ideal[i] + (ref[i] - ideal[i]) * rng.uniform();
            for (const Point& p : front)
                if (weakly_dominates(p, sample)) {
                    ++hits;
                    break;
                }
        }
    }
    const double p = static_cast<double>(hits) / static_cast<double>(n_samples);
    return {box * p, box * std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples))};
}

std::vector<ObjectiveVector> pareto_front(const std::vector<ObjectiveVector>& points) {
    std::vector<ObjectiveVector> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool keep = true;
        for (std::size_t j = 0; j < points.size() && keep; ++j) {
            if (j == i) continue;
            if (dominates(points[j], points[i]) || (points[j] == points[i] && j < i)) keep = false;
        }
        if (keep) out.push_back(points[i]);
    }
    return out;
}

double single_success_rate(const Schedule& s, const DecodeContext& ctx, SatelliteClass cls) {
    std::unordered_map<int, bool> in_class;
    for (const Satellite& sat : ctx.instance().satellites)
        in_class[sat.id] = satellite_class(sat) == cls;
    int total = 0, scheduled = 0;
    for (int i = 0; i < ctx.oid_count(); ++i) {
        if (!in_class[ctx.instance().oids[i].satellite]) continue;
        ++total;
        if (s.scheduled[i]) ++scheduled;
    }
    return total == 0 ? 0.0 : static_cast<double>(scheduled) / total;
}

FrontSummary summarize_front(const std::vector<ObjectiveVector>& archive, ObjectiveVector ref) {
    if (archive.empty()) throw std::domain_error("summarize_front needs a nonempty archive");
    FrontSummary out;
    out.points = pareto_front(archive);
    out.hv = hypervolume(out.points, ref);
    out.fr_min = out.fr_max = out.points.front().fr;
    out.st_min = out.st_max = out.points.front().st;
    double fr_sum = 0.0, st_sum = 0.0;
    for (const auto& p : out.points) {
        out.fr_min = std::min(out.fr_min, p.fr);
        out.fr_max = std::max(out.fr_max, p.fr);
        out.st_min = std::min(out.st_min, p.st);
        out.st_max = std::max(out.st_max, p.st);
        fr_sum += p.fr;
        st_sum += p.st;
    }
    out.fr_mean = fr_sum / static_cast<double>(out.points.size());
    out.st_mean = st_sum / static_cast<double>(out.points.size());
    return out;
}

}  // namespace downlink
