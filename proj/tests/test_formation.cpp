#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <numbers>

#include "clustersim/formation.hpp"

using namespace clustersim;
using formation::FormationKind;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
const geometry::BodyConstants kBody{};

formation::ClusterLayout make_ring(std::size_t n_slaves, double phase = 0.0) {
    rng::Stream s(0);
    return formation::build_cluster(geometry::make_unit(0.2, -0.3, 0.9), n_slaves,
                                    FormationKind::circular, 1.0 * kDeg, phase, s);
}

double set_distance(const std::vector<geometry::UnitDirection>& a,
                    const std::vector<geometry::UnitDirection>& b) {
    double worst = 0.0;
    for (const auto& p : a) {
        double best = 1e9;
        for (const auto& q : b) best = std::fmin(best, geometry::angle_between(p, q));
        worst = std::fmax(worst, best);
    }
    return worst;
}

}  // namespace

TEST_CASE("build_cluster: master-only, circular nine, uniform containment") {
    rng::Stream s(5);
    const auto solo = formation::build_cluster({0, 0, 1}, 0, FormationKind::circular, 1.0 * kDeg,
                                               0.0, s);
    CHECK(solo.size() == 1);
    CHECK(solo.slaves.empty());

    const auto ring = make_ring(9);
    CHECK(ring.size() == 10);
    for (const auto& p : ring.slaves) {
        CHECK(std::fabs(geometry::angle_between(p, ring.master) - 1.0 * kDeg) < 1e-12);
    }

    const auto uni = formation::build_cluster({0, 0, 1}, 9, FormationKind::uniform, 1.0 * kDeg,
                                              0.0, s);
    CHECK(uni.slaves.size() == 9);
    for (const auto& p : uni.slaves) {
        CHECK(geometry::angle_between(p, uni.master) <= 1.0 * kDeg + 1e-12);
    }
}

TEST_CASE("advance_phase: quarter period turns the slaves by 90 degrees") {
    const auto ring = make_ring(3, 0.4);
    const formation::FormationClock clock{1000.0, 0.0, +1};
    const auto turned = formation::advance_phase(ring, clock, 250.0);
    const auto expect = geometry::place_circular(ring.cap, 3, 0.4 + std::numbers::pi / 2.0);
    CHECK(set_distance(turned.slaves, expect) < 1e-12);
    CHECK(turned.phase_rad == doctest::Approx(0.4 + std::numbers::pi / 2.0));

    // configurable rotation sense
    const formation::FormationClock retro{1000.0, 0.0, -1};
    const auto back = formation::advance_phase(ring, retro, 250.0);
    const auto expect_back = geometry::place_circular(ring.cap, 3, 0.4 - std::numbers::pi / 2.0);
    CHECK(set_distance(back.slaves, expect_back) < 1e-12);
}

TEST_CASE("advance_phase: full revolution and discrete symmetry return the set") {
    const auto ring = make_ring(5, 1.1);
    const formation::FormationClock clock{600.0, 0.0, +1};

    const auto full = formation::advance_phase(ring, clock, 600.0);
    CHECK(set_distance(full.slaves, ring.slaves) < 1e-9);

    const auto fifth = formation::advance_phase(ring, clock, 600.0 / 5.0);
    CHECK(set_distance(fifth.slaves, ring.slaves) < 1e-12);
}

TEST_CASE("advance_phase: rigid rotation preserves master distances and composes") {
    const auto ring = make_ring(6, 0.25);
    const formation::FormationClock clock{5792.0, 0.0, +1};

    const auto moved = formation::advance_phase(ring, clock, 321.0);
    for (std::size_t k = 0; k < ring.slaves.size(); ++k) {
        CHECK(geometry::angle_between(moved.slaves[k], ring.master) ==
              doctest::Approx(geometry::angle_between(ring.slaves[k], ring.master))
                  .epsilon(1e-12));
    }

    const auto two_steps =
        formation::advance_phase(formation::advance_phase(ring, clock, 100.0), clock, 221.0);
    for (std::size_t k = 0; k < ring.slaves.size(); ++k) {
        CHECK(geometry::angle_between(two_steps.slaves[k], moved.slaves[k]) < 1e-12);
    }
}

TEST_CASE("advance_phase rejects uniform clusters") {
    rng::Stream s(9);
    const auto uni =
        formation::build_cluster({0, 0, 1}, 4, FormationKind::uniform, 1.0 * kDeg, 0.0, s);
    CHECK_THROWS_AS(formation::advance_phase(uni, formation::FormationClock{}, 10.0),
                    std::invalid_argument);
}

TEST_CASE("drop_satellite: slave removal, master protection, unclustered limit") {
    const auto ring = make_ring(9);

    const auto dropped = formation::drop_satellite(ring, 3);
    CHECK(dropped.slaves.size() == 8);
    // survivors keep their coordinates
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(geometry::angle_between(dropped.slaves[k], ring.slaves[k]) == 0.0);
    }
    for (std::size_t k = 3; k < 8; ++k) {
        CHECK(geometry::angle_between(dropped.slaves[k], ring.slaves[k + 1]) == 0.0);
    }

    CHECK_THROWS_AS(formation::drop_satellite(ring, 0), std::invalid_argument);
    CHECK_THROWS_AS(formation::drop_satellite(ring, 10), std::out_of_range);

    auto c = ring;
    while (!c.slaves.empty()) c = formation::drop_satellite(c, 1);
    CHECK(c.size() == 1);
}

TEST_CASE("max ISL distance: chord oracle, degenerate cap, uniform bound") {
    const auto ring = make_ring(9);
    // chord between two points one polar angle apart, both at orbital radius
    CHECK(formation::max_isl_distance_km(ring, kBody) ==
          doctest::Approx(121.66535791832939).epsilon(1e-9));

    rng::Stream s(2);
    const auto tight = formation::build_cluster({0, 0, 1}, 4, FormationKind::circular,
                                                1e-7, 0.0, s);
    CHECK(formation::max_isl_distance_km(tight, kBody) < 1e-2);

    const auto uni =
        formation::build_cluster({0, 0, 1}, 64, FormationKind::uniform, 1.0 * kDeg, 0.0, s);
    CHECK(formation::max_isl_distance_km(uni, kBody) <=
          formation::max_isl_distance_km(ring, kBody));

    const auto solo = formation::build_cluster({0, 0, 1}, 0, FormationKind::circular, 1.0 * kDeg,
                                               0.0, s);
    CHECK(formation::max_isl_distance_km(solo, kBody) == 0.0);
}

TEST_CASE("kepler period at the default orbit") {
    CHECK(formation::kepler_period_s(kBody) == doctest::Approx(5792.33410959309).epsilon(1e-9));
}
