#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "clustersim/rng.hpp"

namespace clustersim::geometry {

struct BodyConstants {
    double earth_radius_km = 6371.0;
    double altitude_km = 600.0;

    double orbital_radius_km() const { return earth_radius_km + altitude_km; }
};

// Point on the unit sphere. Invariant: |(x,y,z)| = 1 within 1e-12 relative.
struct UnitDirection {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;

    double dot(const UnitDirection& o) const { return x * o.x + y * o.y + z * o.z; }
};

// Normalizes an arbitrary nonzero vector onto the sphere. Throws on zero norm.
UnitDirection make_unit(double x, double y, double z);

UnitDirection cross(const UnitDirection& a, const UnitDirection& b);

// Central angle between two directions, numerically stable near 0 and pi.
double angle_between(const UnitDirection& a, const UnitDirection& b);

// Deterministic orthonormal tangent frame (e1, e2) with e1 x e2 = d.
std::pair<UnitDirection, UnitDirection> tangent_basis(const UnitDirection& d);

// Rodrigues rotation of v about unit axis by angle_rad.
UnitDirection rotate_about(const UnitDirection& v, const UnitDirection& axis, double angle_rad);

struct CapSpec {
    UnitDirection center;
    double polar_angle_rad = 0.0;  // must be in (0, pi/2)
};

struct GroundTerminal {
    UnitDirection direction;   // terminal sits at earth_radius_km along it
    double rx_gain_dB = 0.0;
};

// n i.i.d. directions, area-uniform on the unit sphere.
std::vector<UnitDirection> sample_sphere_bpp(std::size_t n, rng::Stream& stream);

// n i.i.d. directions, area-uniform on the cap. Inverse CDF on cos(angle)
// over [cos(theta_c), 1] plus a uniform azimuth, so containment is exact.
std::vector<UnitDirection> sample_cap_uniform(const CapSpec& cap, std::size_t n,
                                              rng::Stream& stream);

// n directions on the cap boundary, equally spaced in azimuth from phase_rad.
std::vector<UnitDirection> place_circular(const CapSpec& cap, std::size_t n, double phase_rad);

double slant_range_km(const UnitDirection& sat_dir, const GroundTerminal& terminal,
                      const BodyConstants& body);

// Angle above the local horizontal plane at the terminal; negative below horizon.
double elevation_angle_rad(const UnitDirection& sat_dir, const GroundTerminal& terminal,
                           const BodyConstants& body);

// Closed threshold: elevation exactly at the mask counts as visible.
bool is_visible(const UnitDirection& sat_dir, const GroundTerminal& terminal,
                const BodyConstants& body, double min_elevation_rad = 0.0);

// Angle at the satellite between the nadir direction and the terminal.
double off_boresight_angle_rad(const UnitDirection& sat_dir, const GroundTerminal& terminal,
                               const BodyConstants& body);

// Largest central angle terminal-to-satellite at which the satellite still
// clears the elevation mask. Visibility reduces to dot(sat, term) >= cos of this.
double max_central_angle_rad(const BodyConstants& body, double min_elevation_rad = 0.0);

}  // namespace clustersim::geometry
