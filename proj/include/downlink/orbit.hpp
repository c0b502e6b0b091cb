// Two-body orbit propagation and ground-station visibility. Stands in for an
// external mission-analysis tool at desk scale; externally computed window
// lists can be ingested through instance_io instead.

#pragma once

#include <array>

#include "downlink/core.hpp"

namespace downlink {

inline constexpr double kMuEarth = 398600.4418;        // km^3/s^2
inline constexpr double kEarthRadiusKm = 6378.137;     // spherical model
inline constexpr double kEarthRotationRad = 7.2921159e-5;  // rad/s

using Vec3 = std::array<double, 3>;

// Mean-to-eccentric anomaly, Newton iteration to |E - e sinE - M| < 1e-10.
// Throws std::runtime_error after 50 iterations (unreachable for e < 1).
double solve_kepler(double mean_anomaly_rad, double eccentricity);

// Orbital period 2*pi*sqrt(a^3/mu).
double orbital_period_s(const Satellite& sat);

// Inertial (epoch-fixed) position at t seconds past epoch.
Vec3 propagate_eci(const Satellite& sat, double t_s);

// Earth-fixed position: ECI rotated by the constant earth spin, with zero
// rotation angle at epoch.
Vec3 propagate_ecef(const Satellite& sat, double t_s);

// Station position on the spherical earth model.
Vec3 station_ecef(const GroundStation& g);

// Elevation of the satellite above the station's horizon, degrees.
double elevation_deg(const Satellite& sat, const GroundStation& g, double t_s);

// Visibility scan over [horizon_start, horizon_end]: step sampling plus
// bisection refinement of the endpoints to 0.1 s. Windows shorter than
// min_length_s are discarded. Result is sorted by (sw, satellite, station)
// and ids are assigned sequentially from 1.
std::vector<VisibleTimeWindow> compute_vtws(const std::vector<Satellite>& sats,
                                            const std::vector<GroundStation>& stations,
                                            double horizon_start_s, double horizon_end_s,
                                            double step_s = 10.0,
                                            double min_length_s = 120.0);

}  // namespace downlink
