#include "downlink/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace downlink {

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg2rad(double d) { return d * kPi / 180.0; }

}  // namespace

double solve_kepler(double mean_anomaly_rad, double eccentricity) {
    const double m = std::remainder(mean_anomaly_rad, 2.0 * kPi);
    double e_anom = m;
    for (int it = 0; it < 50; ++it) {
        const double f = e_anom - eccentricity * std::sin(e_anom) - m;
        if (std::fabs(f) < 1e-10) return e_anom;
        e_anom -= f / (1.0 - eccentricity * std::cos(e_anom));
    }
    throw std::runtime_error("Kepler iteration failed to converge");
}

double orbital_period_s(const Satellite& sat) {
    const double a = sat.semi_major_axis_km;
    return 2.0 * kPi * std::sqrt(a * a * a / kMuEarth);
}

Vec3 propagate_eci(const Satellite& sat, double t_s) {
    const double a = sat.semi_major_axis_km;
    const double e = sat.eccentricity;
    const double n = std::sqrt(kMuEarth / (a * a * a));  // mean motion, rad/s
    const double m = deg2rad(sat.mean_anomaly_deg) + n * t_s;
    const double ea = solve_kepler(m, e);

    const double nu = 2.0 * std::atan2(std::sqrt(1.0 + e) * std::sin(ea / 2.0),
                                       std::sqrt(1.0 - e) * std::cos(ea / 2.0));
    const double r = a * (1.0 - e * std::cos(ea));
    const double xp = r * std::cos(nu);  // perifocal frame
    const double yp = r * std::sin(nu);

    const double co = std::cos(deg2rad(sat.raan_deg)), so = std::sin(deg2rad(sat.raan_deg));
    const double ci = std::cos(deg2rad(sat.inclination_deg)), si = std::sin(deg2rad(sat.inclination_deg));
    const double cw = std::cos(deg2rad(sat.arg_perigee_deg)), sw = std::sin(deg2rad(sat.arg_perigee_deg));

    // Rz(raan) * Rx(inc) * Rz(argp) applied to (xp, yp, 0)
    return Vec3{
        (co * cw - so * sw * ci) * xp + (-co * sw - so * cw * ci) * yp,
        (so * cw + co * sw * ci) * xp + (-so * sw + co * cw * ci) * yp,
        (sw * si) * xp + (cw * si) * yp,
    };
}

Vec3 propagate_ecef(const Satellite& sat, double t_s) {
    const Vec3 eci = propagate_eci(sat, t_s);
    const double theta = kEarthRotationRad * t_s;
    const double c = std::cos(theta), s = std::sin(theta);
    return Vec3{c * eci[0] + s * eci[1], -s * eci[0] + c * eci[1], eci[2]};
}

Vec3 station_ecef(const GroundStation& g) {
    const double r = kEarthRadiusKm + g.altitude_km;
    const double lat = deg2rad(g.latitude_deg), lon = deg2rad(g.longitude_deg);
    return Vec3{r * std::cos(lat) * std::cos(lon), r * std::cos(lat) * std::sin(lon),
                r * std::sin(lat)};
}

double elevation_deg(const Satellite& sat, const GroundStation& g, double t_s) {
    const Vec3 sp = propagate_ecef(sat, t_s);
    const Vec3 gp = station_ecef(g);
    const Vec3 rel{sp[0] - gp[0], sp[1] - gp[1], sp[2] - gp[2]};
    const double gn = std::sqrt(gp[0] * gp[0] + gp[1] * gp[1] + gp[2] * gp[2]);
    const double rn = std::sqrt(rel[0] * rel[0] + rel[1] * rel[1] + rel[2] * rel[2]);
    const double sin_el = (rel[0] * gp[0] + rel[1] * gp[1] + rel[2] * gp[2]) / (gn * rn);
    return std::asin(std::clamp(sin_el, -1.0, 1.0)) * 180.0 / kPi;
}

namespace {

// Bisect an above/below-threshold transition inside [lo, hi] down to 0.1 s.
double refine_crossing(const Satellite& sat, const GroundStation& g, double threshold,
                       double lo, double hi, bool rising) {
    while (hi - lo > 0.1) {
        const double mid = 0.5 * (lo + hi);
        const bool above = elevation_deg(sat, g, mid) >= threshold;
        if (above == rising)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<VisibleTimeWindow> compute_vtws(const std::vector<Satellite>& sats,
                                            const std::vector<GroundStation>& stations,
                                            double horizon_start_s, double horizon_end_s,
                                            double step_s, double min_length_s) {
    if (step_s <= 0.0) throw std::invalid_argument("step must be positive");
    std::vector<VisibleTimeWindow> out;
    for (const Satellite& sat : sats) {
        for (const GroundStation& g : stations) {
            const double threshold = g.min_elevation_deg;
            bool inside = elevation_deg(sat, g, horizon_start_s) >= threshold;
            double start = inside ? horizon_start_s : 0.0;
            double prev = horizon_start_s;
            for (double t = horizon_start_s + step_s;; t += step_s) {
                const double clamped = std::min(t, horizon_end_s);
                const bool above = elevation_deg(sat, g, clamped) >= threshold;
                if (above && !inside) {
                    start = refine_crossing(sat, g, threshold, prev, clamped, true);
                    inside = true;
                } else if (!above && inside) {
                    const double end = refine_crossing(sat, g, threshold, prev, clamped, false);
                    if (end - start >= min_length_s)
                        out.push_back({0, start, end, sat.id, g.id});
                    inside = false;
                }
                prev = clamped;
                if (clamped >= horizon_end_s) break;
            }
            if (inside && horizon_end_s - start >= min_length_s)
                out.push_back({0, start, horizon_end_s, sat.id, g.id});
        }
    }
    std::sort(out.begin(), out.end(), [](const VisibleTimeWindow& a, const VisibleTimeWindow& b) {
        if (a.sw != b.sw) return a.sw < b.sw;
        if (a.satellite != b.satellite) return a.satellite < b.satellite;
        return a.station < b.station;
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i) + 1;
    return out;
}

}  // namespace downlink
