#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "clustersim/geometry.hpp"

using namespace clustersim;
using geometry::UnitDirection;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
const geometry::BodyConstants kBody{};
const geometry::GroundTerminal kTerminal{{0.0, 0.0, 1.0}, 0.0};

double norm(const UnitDirection& d) { return std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z); }

// one-sample KS statistic against U[lo, hi]
double ks_uniform(std::vector<double> xs, double lo, double hi) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = (xs[i] - lo) / (hi - lo);
        d = std::fmax(d, std::fabs(f - static_cast<double>(i) / n));
        d = std::fmax(d, std::fabs(f - static_cast<double>(i + 1) / n));
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) {
            ++i;
        } else {
            ++j;
        }
        const double fa = static_cast<double>(i) / static_cast<double>(a.size());
        const double fb = static_cast<double>(j) / static_cast<double>(b.size());
        d = std::fmax(d, std::fabs(fa - fb));
    }
    return d;
}

}  // namespace

TEST_CASE("sphere sampling: empty, unit norm, octant balance, coordinate means") {
    rng::Stream s(1001);
    CHECK(geometry::sample_sphere_bpp(0, s).empty());

    const std::size_t n = 1000000;
    const auto pts = geometry::sample_sphere_bpp(n, s);
    REQUIRE(pts.size() == n);

    std::array<double, 8> counts{};
    double mx = 0, my = 0, mz = 0, worst_norm = 0;
    for (const auto& p : pts) {
        worst_norm = std::fmax(worst_norm, std::fabs(norm(p) - 1.0));
        const int oct = (p.x > 0 ? 1 : 0) | (p.y > 0 ? 2 : 0) | (p.z > 0 ? 4 : 0);
        counts[static_cast<std::size_t>(oct)] += 1.0;
        mx += p.x;
        my += p.y;
        mz += p.z;
    }
    CHECK(worst_norm < 1e-12);
    // chi-square over the 8 octants, significance 0.001, 7 dof
    const double expected = static_cast<double>(n) / 8.0;
    double chi2 = 0.0;
    for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < 24.321886347856854);

    CHECK(std::fabs(mx / n) < 0.005);
    CHECK(std::fabs(my / n) < 0.005);
    CHECK(std::fabs(mz / n) < 0.005);
}

TEST_CASE("sphere sampling: z coordinate is uniform on [-1, 1]") {
    rng::Stream s(2002);
    const auto pts = geometry::sample_sphere_bpp(1000000, s);
    std::vector<double> zs;
    zs.reserve(pts.size());
    for (const auto& p : pts) zs.push_back(p.z);
    CHECK(ks_uniform(std::move(zs), -1.0, 1.0) < 0.002);
}

TEST_CASE("cap sampling: containment and area ratio") {
    rng::Stream s(3003);
    const geometry::CapSpec cap{{0.0, 0.0, 1.0}, 1.0 * kDeg};

    for (const auto& p : geometry::sample_cap_uniform(cap, 1000, s)) {
        CHECK(geometry::angle_between(p, cap.center) <= 1.0 * kDeg + 1e-12);
    }

    const std::size_t n = 1000000;
    const auto pts = geometry::sample_cap_uniform(cap, n, s);
    std::size_t within = 0;
    for (const auto& p : pts) {
        if (geometry::angle_between(p, cap.center) <= 0.5 * kDeg) ++within;
    }
    // area-uniformity: fraction inside a sub-cap equals the cap area ratio
    const double ratio = (1.0 - std::cos(0.5 * kDeg)) / (1.0 - std::cos(1.0 * kDeg));
    CHECK(std::fabs(static_cast<double>(within) / static_cast<double>(n) - ratio) < 0.005);

    rng::Stream s1(7);
    const geometry::CapSpec tilted{geometry::make_unit(1.0, 2.0, -0.5), 1.0 * kDeg};
    const auto single = geometry::sample_cap_uniform(tilted, 1, s1);
    CHECK(geometry::angle_between(single[0], tilted.center) <= 1.0 * kDeg);

    rng::Stream s2(8);
    const auto north = geometry::sample_cap_uniform(cap, 1, s2);
    CHECK(north[0].z >= std::cos(1.0 * kDeg));
}

TEST_CASE("cap sampling: hemisphere cap matches the sphere restricted to it") {
    rng::Stream s(4004);
    const geometry::CapSpec hemi{{0.0, 0.0, 1.0}, std::numbers::pi / 2.0};
    const auto cap_pts = geometry::sample_cap_uniform(hemi, 1000000, s);
    const auto sphere_pts = geometry::sample_sphere_bpp(1000000, s);
    std::vector<double> a, b;
    for (const auto& p : cap_pts) a.push_back(p.z);
    for (const auto& p : sphere_pts) {
        if (p.z >= 0.0) b.push_back(p.z);
    }
    CHECK(ks_two_sample(std::move(a), std::move(b)) < 0.005);
}

TEST_CASE("circular placement: boundary, equal spacing, symmetries") {
    const geometry::CapSpec cap{geometry::make_unit(0.3, -0.2, 0.9), 1.0 * kDeg};

    const auto nine = geometry::place_circular(cap, 9, 0.0);
    for (const auto& p : nine) {
        CHECK(std::fabs(geometry::angle_between(p, cap.center) - 1.0 * kDeg) < 1e-12);
    }

    const auto four = geometry::place_circular(cap, 4, 0.7);
    std::vector<double> gaps;
    for (int k = 0; k < 4; ++k) {
        gaps.push_back(geometry::angle_between(four[static_cast<std::size_t>(k)],
                                               four[static_cast<std::size_t>((k + 1) % 4)]));
    }
    for (double g : gaps) CHECK(g == doctest::Approx(gaps[0]).epsilon(1e-12));

    // antipodal pair on the ring: phase 0 and phase pi give the same set
    const auto two_a = geometry::place_circular(cap, 2, 0.0);
    const auto two_b = geometry::place_circular(cap, 2, std::numbers::pi);
    for (const auto& p : two_a) {
        double best = 1e9;
        for (const auto& q : two_b) best = std::fmin(best, geometry::angle_between(p, q));
        CHECK(best < 1e-12);
    }
}

TEST_CASE("circular placement: set is invariant under phase shifts of 2 pi / n") {
    const geometry::CapSpec cap{geometry::make_unit(-0.1, 0.4, 0.9), 2.5 * kDeg};
    const std::size_t n = 7;
    const auto base = geometry::place_circular(cap, n, 0.3);
    const auto shifted = geometry::place_circular(cap, n, 0.3 + 2.0 * std::numbers::pi / n);
    for (const auto& p : base) {
        double best = 1e9;
        for (const auto& q : shifted) best = std::fmin(best, geometry::angle_between(p, q));
        CHECK(best < 1e-12);
    }
}

TEST_CASE("slant range: nadir, horizon, antipode") {
    CHECK(geometry::slant_range_km({0, 0, 1}, kTerminal, kBody) == doctest::Approx(600.0));

    const double cp = 6371.0 / 6971.0;  // horizon geometry
    const auto horizon = geometry::make_unit(std::sqrt(1 - cp * cp), 0.0, cp);
    CHECK(geometry::slant_range_km(horizon, kTerminal, kBody) ==
          doctest::Approx(2829.3462142339527).epsilon(1e-9));

    CHECK(geometry::slant_range_km({0, 0, -1}, kTerminal, kBody) == doctest::Approx(13342.0));
}

TEST_CASE("elevation: zenith, tangency, below horizon") {
    CHECK(geometry::elevation_angle_rad({0, 0, 1}, kTerminal, kBody) ==
          doctest::Approx(std::numbers::pi / 2.0));

    const double psi = std::acos(6371.0 / 6971.0);
    const auto tangent = geometry::make_unit(std::sin(psi), 0.0, std::cos(psi));
    CHECK(std::fabs(geometry::elevation_angle_rad(tangent, kTerminal, kBody)) < 1e-9);

    CHECK(geometry::elevation_angle_rad({0, 0, -1}, kTerminal, kBody) < 0.0);
}

TEST_CASE("visibility mask is a closed threshold") {
    CHECK(geometry::is_visible({0, 0, 1}, kTerminal, kBody));
    CHECK_FALSE(geometry::is_visible({0, 0, -1}, kTerminal, kBody));

    const double mask = 10.0 * kDeg;
    const double psi = geometry::max_central_angle_rad(kBody, mask);
    const auto edge = geometry::make_unit(std::sin(psi), 0.0, std::cos(psi));
    const double elev = geometry::elevation_angle_rad(edge, kTerminal, kBody);
    CHECK(elev == doctest::Approx(mask).epsilon(1e-12));
    CHECK(geometry::is_visible(edge, kTerminal, kBody, elev));
}

TEST_CASE("off-boresight: subsatellite point, horizon, range") {
    CHECK(geometry::off_boresight_angle_rad({0, 0, 1}, kTerminal, kBody) ==
          doctest::Approx(0.0).epsilon(1e-12));

    const double cp = 6371.0 / 6971.0;
    const auto horizon = geometry::make_unit(std::sqrt(1 - cp * cp), 0.0, cp);
    CHECK(geometry::off_boresight_angle_rad(horizon, kTerminal, kBody) / kDeg ==
          doctest::Approx(66.05410486981961).epsilon(1e-6));

    rng::Stream s(11);
    for (const auto& p : geometry::sample_sphere_bpp(200, s)) {
        const double off = geometry::off_boresight_angle_rad(p, kTerminal, kBody);
        CHECK(off >= 0.0);
        CHECK(off <= std::numbers::pi);
    }
}

TEST_CASE("rotation equivariance of range, elevation and off-boresight") {
    rng::Stream s(12);
    const auto sats = geometry::sample_sphere_bpp(50, s);
    for (int trial = 0; trial < 5; ++trial) {
        const auto axis_pts = geometry::sample_sphere_bpp(1, s);
        const double angle = s.uniform01() * 2.0 * std::numbers::pi;
        const geometry::GroundTerminal term_rot{
            geometry::rotate_about(kTerminal.direction, axis_pts[0], angle), 0.0};
        for (const auto& sat : sats) {
            const auto sat_rot = geometry::rotate_about(sat, axis_pts[0], angle);
            CHECK(geometry::slant_range_km(sat_rot, term_rot, kBody) ==
                  doctest::Approx(geometry::slant_range_km(sat, kTerminal, kBody)).epsilon(1e-9));
            CHECK(geometry::elevation_angle_rad(sat_rot, term_rot, kBody) ==
                  doctest::Approx(geometry::elevation_angle_rad(sat, kTerminal, kBody))
                      .epsilon(1e-9));
            CHECK(geometry::off_boresight_angle_rad(sat_rot, term_rot, kBody) ==
                  doctest::Approx(geometry::off_boresight_angle_rad(sat, kTerminal, kBody))
                      .epsilon(1e-9));
        }
    }
}
