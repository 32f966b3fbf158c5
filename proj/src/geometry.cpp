#include "clustersim/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace clustersim::geometry {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

UnitDirection make_unit(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (n <= 0.0 || !std::isfinite(n)) {
        throw std::invalid_argument("make_unit: zero or non-finite vector");
    }
    return {x / n, y / n, z / n};
}

UnitDirection cross(const UnitDirection& a, const UnitDirection& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double angle_between(const UnitDirection& a, const UnitDirection& b) {
    // atan2 of (|a x b|, a.b) is stable where acos loses precision
    const UnitDirection c = cross(a, b);
    const double s = std::sqrt(c.x * c.x + c.y * c.y + c.z * c.z);
    return std::atan2(s, a.dot(b));
}

std::pair<UnitDirection, UnitDirection> tangent_basis(const UnitDirection& d) {
    // helper axis: the coordinate axis least aligned with d
    const double ax = std::fabs(d.x), ay = std::fabs(d.y), az = std::fabs(d.z);
    UnitDirection h{1.0, 0.0, 0.0};
    if (ay <= ax && ay <= az) {
        h = {0.0, 1.0, 0.0};
    } else if (az <= ax && az <= ay) {
        h = {0.0, 0.0, 1.0};
    }
    const UnitDirection c = cross(d, h);
    const double n = std::sqrt(c.x * c.x + c.y * c.y + c.z * c.z);
    const UnitDirection e1{c.x / n, c.y / n, c.z / n};
    const UnitDirection e2 = cross(d, e1);  // e1 x e2 = d
    return {e1, e2};
}

UnitDirection rotate_about(const UnitDirection& v, const UnitDirection& axis, double angle_rad) {
    const double c = std::cos(angle_rad);
    const double s = std::sin(angle_rad);
    const UnitDirection kxv = cross(axis, v);
    const double kdv = axis.dot(v);
    return {v.x * c + kxv.x * s + axis.x * kdv * (1.0 - c),
            v.y * c + kxv.y * s + axis.y * kdv * (1.0 - c),
            v.z * c + kxv.z * s + axis.z * kdv * (1.0 - c)};
}

std::vector<UnitDirection> sample_sphere_bpp(std::size_t n, rng::Stream& stream) {
    std::vector<UnitDirection> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = 2.0 * stream.uniform01() - 1.0;
        const double az = kTwoPi * stream.uniform01();
        const double r = std::sqrt(std::fmax(0.0, 1.0 - z * z));
        out.push_back({r * std::cos(az), r * std::sin(az), z});
    }
    return out;
}

std::vector<UnitDirection> sample_cap_uniform(const CapSpec& cap, std::size_t n,
                                              rng::Stream& stream) {
    const auto [e1, e2] = tangent_basis(cap.center);
    const double cos_tc = std::cos(cap.polar_angle_rad);
    std::vector<UnitDirection> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ct = 1.0 - stream.uniform01() * (1.0 - cos_tc);
        const double st = std::sqrt(std::fmax(0.0, 1.0 - ct * ct));
        const double az = kTwoPi * stream.uniform01();
        const double ca = std::cos(az), sa = std::sin(az);
        out.push_back({ct * cap.center.x + st * (ca * e1.x + sa * e2.x),
                       ct * cap.center.y + st * (ca * e1.y + sa * e2.y),
                       ct * cap.center.z + st * (ca * e1.z + sa * e2.z)});
    }
    return out;
}

std::vector<UnitDirection> place_circular(const CapSpec& cap, std::size_t n, double phase_rad) {
    const auto [e1, e2] = tangent_basis(cap.center);
    const double ct = std::cos(cap.polar_angle_rad);
    const double st = std::sin(cap.polar_angle_rad);
    std::vector<UnitDirection> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double az = phase_rad + kTwoPi * static_cast<double>(k) / static_cast<double>(n);
        const double ca = std::cos(az), sa = std::sin(az);
        out.push_back({ct * cap.center.x + st * (ca * e1.x + sa * e2.x),
                       ct * cap.center.y + st * (ca * e1.y + sa * e2.y),
                       ct * cap.center.z + st * (ca * e1.z + sa * e2.z)});
    }
    return out;
}

double slant_range_km(const UnitDirection& sat_dir, const GroundTerminal& terminal,
                      const BodyConstants& body) {
    const double re = body.earth_radius_km;
    const double ro = body.orbital_radius_km();
    const double cp = sat_dir.dot(terminal.direction);
    return std::sqrt(std::fmax(0.0, re * re + ro * ro - 2.0 * re * ro * cp));
}

double elevation_angle_rad(const UnitDirection& sat_dir, const GroundTerminal& terminal,
                           const BodyConstants& body) {
    const double re = body.earth_radius_km;
    const double ro = body.orbital_radius_km();
    const double cp = sat_dir.dot(terminal.direction);
    const double d = std::sqrt(std::fmax(0.0, re * re + ro * ro - 2.0 * re * ro * cp));
    const double s = (ro * cp - re) / d;
    return std::asin(std::fmin(1.0, std::fmax(-1.0, s)));
}

bool is_visible(const UnitDirection& sat_dir, const GroundTerminal& terminal,
                const BodyConstants& body, double min_elevation_rad) {
    return elevation_angle_rad(sat_dir, terminal, body) >= min_elevation_rad;
}

double off_boresight_angle_rad(const UnitDirection& sat_dir, const GroundTerminal& terminal,
                               const BodyConstants& body) {
    const double re = body.earth_radius_km;
    const double ro = body.orbital_radius_km();
    const double cp = sat_dir.dot(terminal.direction);
    const double d = std::sqrt(std::fmax(0.0, re * re + ro * ro - 2.0 * re * ro * cp));
    const double c = (ro - re * cp) / d;
    return std::acos(std::fmin(1.0, std::fmax(-1.0, c)));
}

double max_central_angle_rad(const BodyConstants& body, double min_elevation_rad) {
    // law of sines in the center-terminal-satellite triangle
    const double ratio = body.earth_radius_km / body.orbital_radius_km();
    return std::acos(ratio * std::cos(min_elevation_rad)) - min_elevation_rad;
}

}  // namespace clustersim::geometry
