#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <numbers>

#include "clustersim/montecarlo.hpp"

using namespace clustersim;
using montecarlo::ExperimentConfig;
using montecarlo::MetricEstimate;

namespace {

ExperimentConfig small_cfg(const char* scheme, std::size_t n_sats, std::size_t n_drops,
                           std::uint64_t seed) {
    ExperimentConfig cfg;
    montecarlo::apply_scheme_string(cfg, scheme);
    cfg.n_satellites = n_sats;
    cfg.n_drops = n_drops;
    cfg.seed = seed;
    return cfg;
}

std::vector<transmission::SinrSample> synthetic(const std::vector<double>& sinrs) {
    std::vector<transmission::SinrSample> out;
    for (double s : sinrs) out.push_back(transmission::make_sinr(s, 0.0, 1.0));
    return out;
}

}  // namespace

TEST_CASE("run_drop is a pure function of (config, drop_index)") {
    const auto cfg = small_cfg("jt_mrt", 500, 100, 77);
    for (std::size_t i : {0u, 3u, 17u}) {
        const auto a = montecarlo::run_drop(cfg, i);
        const auto b = montecarlo::run_drop(cfg, i);
        CHECK(a.sinr == b.sinr);
        CHECK(a.desired_W == b.desired_W);
        CHECK(a.interference_W == b.interference_W);
        CHECK(a.noise_W == b.noise_W);
        CHECK(a.outage == b.outage);
    }
}

TEST_CASE("1000 satellites at fraction 0.1 form 100 clusters of one master and nine slaves") {
    const auto cfg = small_cfg("jt_mrt", 1000, 1, 1);
    CHECK(cfg.n_masters() == 100);
    for (std::size_t c = 0; c < 100; ++c) CHECK(cfg.cluster_members(c) == 10);

    const auto net = montecarlo::build_realization(cfg, 0, /*prune=*/false);
    REQUIRE(net.clusters.size() == 100);
    std::size_t total = 0;
    for (const auto& cl : net.clusters) {
        CHECK(cl.size() == 10);
        total += cl.size();
    }
    CHECK(total == 1000);
    CHECK(net.first_member_index[7] == 70);
}

TEST_CASE("uneven totals spread the slaves round-robin") {
    const auto cfg = small_cfg("jt_mrt", 1007, 1, 1);
    CHECK(cfg.n_masters() == 101);
    std::size_t total = 0;
    std::size_t big = 0;
    for (std::size_t c = 0; c < 101; ++c) {
        const auto k = cfg.cluster_members(c);
        CHECK(k >= 9);
        CHECK(k <= 10);
        big += (k == 10);
        total += k;
        CHECK(cfg.first_member_index(c) == total - k);
    }
    CHECK(total == 1007);
    CHECK(big == 1007 - 101 * 9);
}

TEST_CASE("pruning provably invisible clusters never changes the drop") {
    auto cfg = small_cfg("dps", 2000, 1, 31337);
    for (std::size_t drop = 0; drop < 8; ++drop) {
        const auto pruned = montecarlo::build_realization(cfg, drop, true);
        const auto full = montecarlo::build_realization(cfg, drop, false);
        CHECK(pruned.clusters.size() < full.clusters.size());

        const double min_elev = cfg.min_elevation_deg * std::numbers::pi / 180.0;
        const auto s1 = transmission::associate(pruned, min_elev);
        const auto s2 = transmission::associate(full, min_elev);
        REQUIRE(s1.has_value() == s2.has_value());
        if (s1) {
            CHECK(pruned.cluster_index[s1->entry] == full.cluster_index[s2->entry]);
            // any index-keyed fading and picker must agree across the two
            const transmission::FadingField fading = [&](std::size_t k) {
                rng::Stream s(rng::derive(999, drop, k));
                return channel::sample_shadowed_rician_power(cfg.fading, s);
            };
            const auto pick = transmission::uniform_member_picker(rng::derive(cfg.seed, drop));
            const double i1 = transmission::interference_power(pruned, *s1, cfg.scheme,
                                                               cfg.budget, min_elev, fading, pick);
            const double i2 = transmission::interference_power(full, *s2, cfg.scheme, cfg.budget,
                                                               min_elev, fading, pick);
            CHECK(i1 == i2);
        }
    }
}

TEST_CASE("single pinned satellite reproduces the closed-form SNR") {
    auto cfg = small_cfg("unclustered", 1, 200, 5);
    cfg.debug_unit_fading = true;
    cfg.debug_pin_zenith = true;
    const auto drop = montecarlo::run_drop(cfg, 0);
    CHECK(drop.sinr == doctest::Approx(415.6310030782887).epsilon(1e-9));
    CHECK(drop.interference_W == 0.0);

    const auto est = montecarlo::estimate_ergodic_capacity(cfg, 2);
    CHECK(est.value == doctest::Approx(std::log2(1.0 + 415.6310030782887)).epsilon(1e-12));
    CHECK(est.ci95_halfwidth == 0.0);
}

TEST_CASE("worker count does not change any sample") {
    const auto cfg = small_cfg("dps", 300, 120, 99);
    const auto one = montecarlo::simulate_drops(cfg, 1);
    const auto four = montecarlo::simulate_drops(cfg, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].sinr == four[i].sinr);
        CHECK(one[i].desired_W == four[i].desired_W);
        CHECK(one[i].interference_W == four[i].interference_W);
    }
}

TEST_CASE("clusters of one under dps replay the unclustered network exactly") {
    auto clustered = small_cfg("dps", 400, 60, 4242);
    clustered.master_fraction = 1.0;
    const auto unclustered = small_cfg("unclustered", 400, 60, 4242);
    const auto a = montecarlo::simulate_drops(clustered, 2);
    const auto b = montecarlo::simulate_drops(unclustered, 2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].sinr == b[i].sinr);
        CHECK(a[i].desired_W == b[i].desired_W);
        CHECK(a[i].interference_W == b[i].interference_W);
    }
}

TEST_CASE("coverage: sentinel thresholds and monotonicity on shared drops") {
    auto cfg = small_cfg("jt_mrt", 200, 400, 11);
    cfg.beta_grid_dB = {-std::numeric_limits<double>::infinity(), -10, -5, 0, 5,
                        10, 15, 20, 25, 30, 200};
    const auto samples = montecarlo::simulate_drops(cfg, 2);
    const auto rows = montecarlo::coverage_from_samples(samples, cfg);
    REQUIRE(rows.size() == cfg.beta_grid_dB.size());

    const auto outage = montecarlo::outage_from_samples(samples, cfg);
    CHECK(rows.front().value == doctest::Approx(1.0 - outage.value).epsilon(1e-12));
    CHECK(rows.back().value == 0.0);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].value <= rows[i - 1].value + 1e-12);
    }
    for (const auto& r : rows) {
        CHECK(r.value >= 0.0);
        CHECK(r.value <= 1.0);
        CHECK(r.ci95_halfwidth >= 0.0);
        CHECK(r.seed == cfg.seed);
    }
}

TEST_CASE("capacity estimator on forced samples") {
    auto cfg = small_cfg("jt_mrt", 100, 4, 1);
    const auto ones = synthetic({1.0, 1.0, 1.0, 1.0});
    const auto est = montecarlo::capacity_from_samples(ones, cfg);
    CHECK(est.value == doctest::Approx(1.0));
    CHECK(est.ci95_halfwidth == doctest::Approx(0.0));

    const auto zeros = synthetic({0.0, 0.0, 0.0, 0.0});
    CHECK(montecarlo::capacity_from_samples(zeros, cfg).value == 0.0);
}

TEST_CASE("doubling the drops shrinks the capacity CI like one over sqrt(2)") {
    rng::Stream s(606);
    double ratio_sum = 0.0;
    const int trials = 40;
    for (int t = 0; t < trials; ++t) {
        std::vector<double> big;
        for (int i = 0; i < 4000; ++i) {
            const double u = s.uniform01();
            big.push_back(-std::log(1.0 - u));  // exponential SINR
        }
        auto cfg = small_cfg("jt_mrt", 100, 1, 1);
        const auto half = std::vector<double>(big.begin(), big.begin() + 2000);
        const auto ci_half = montecarlo::capacity_from_samples(synthetic(half), cfg).ci95_halfwidth;
        const auto ci_full = montecarlo::capacity_from_samples(synthetic(big), cfg).ci95_halfwidth;
        ratio_sum += ci_full / ci_half;
    }
    const double mean_ratio = ratio_sum / trials;
    CHECK(mean_ratio > (1.0 / std::numbers::sqrt2) * 0.8);
    CHECK(mean_ratio < (1.0 / std::numbers::sqrt2) * 1.2);
}

TEST_CASE("coverage CI covers the truth on a known generator") {
    // exponential SINR: P(SINR > beta) = exp(-beta)
    rng::Stream s(707);
    const double beta_dB = 0.0;
    const double truth = std::exp(-1.0);
    int covered = 0;
    for (int exp_i = 0; exp_i < 100; ++exp_i) {
        std::vector<double> sinrs;
        for (int i = 0; i < 2000; ++i) sinrs.push_back(-std::log(1.0 - s.uniform01()));
        auto cfg = small_cfg("jt_mrt", 100, 1, 1);
        cfg.beta_grid_dB = {beta_dB};
        const auto rows = montecarlo::coverage_from_samples(synthetic(sinrs), cfg);
        if (std::fabs(rows[0].value - truth) <= rows[0].ci95_halfwidth) ++covered;
    }
    CHECK(covered >= 90);
}

TEST_CASE("drop independence: negligible lag-1 autocorrelation") {
    auto cfg = small_cfg("unclustered", 60, 100000, 2718);
    const auto samples = montecarlo::simulate_drops(cfg, 2);
    double mean = 0.0;
    for (const auto& x : samples) mean += x.sinr;
    mean /= static_cast<double>(samples.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double d = samples[i].sinr - mean;
        den += d * d;
        if (i + 1 < samples.size()) num += d * (samples[i + 1].sinr - mean);
    }
    CHECK(std::fabs(num / den) < 0.01);
}

TEST_CASE("raising the elevation mask only adds outages") {
    auto open_sky = small_cfg("unclustered", 150, 300, 51);
    auto masked = open_sky;
    masked.min_elevation_deg = 20.0;
    const auto a = montecarlo::simulate_drops(open_sky, 2);
    const auto b = montecarlo::simulate_drops(masked, 2);
    const auto out_a = montecarlo::outage_from_samples(a, open_sky);
    const auto out_b = montecarlo::outage_from_samples(b, masked);
    CHECK(out_b.value > out_a.value);
    // a masked drop that still serves sees no farther interferer than before
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!b[i].outage) CHECK(b[i].interference_W <= a[i].interference_W + 1e-30);
    }
}

TEST_CASE("jt_egt equals per-satellite jt_mrt drop by drop") {
    auto egt = small_cfg("jt_egt", 600, 80, 61);
    auto mrt = small_cfg("jt_mrt", 600, 80, 61);
    mrt.scheme.mrt_power_budget = transmission::MrtPowerBudget::per_satellite;
    const auto a = montecarlo::simulate_drops(egt, 2);
    const auto b = montecarlo::simulate_drops(mrt, 2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].desired_W == b[i].desired_W);
        CHECK(a[i].sinr == b[i].sinr);
    }
}

TEST_CASE("validation names the offending field") {
    auto cfg = small_cfg("jt_mrt", 100, 10, 1);
    cfg.master_fraction = 0.0;
    CHECK_THROWS_WITH_AS(cfg.validate(), "master_fraction: must be in (0, 1]",
                         std::invalid_argument);
    cfg.master_fraction = 0.1;
    cfg.budget.pathloss_exponent = 1.5;
    CHECK_THROWS_WITH_AS(cfg.validate(), "pathloss_exponent: must be >= 2", std::invalid_argument);
}

TEST_CASE("sweep: rows per value, reproducibility, shared drops for beta") {
    auto base = small_cfg("jt_mrt", 120, 80, 13);
    base.beta_grid_dB = {0.0, 10.0};

    const auto cells = montecarlo::sweep(base, montecarlo::SweepAxis::n_satellites,
                                         {"100", "200", "400"}, 2);
    REQUIRE(cells.size() == 3);
    for (const auto& cell : cells) {
        // coverage rows for the grid plus capacity, throughput and outage
        CHECK(cell.estimates.size() == 5);
        CHECK(cell.cfg.seed == montecarlo::cell_seed(13, "n_satellites", cell.value));
    }
    const auto again = montecarlo::sweep(base, montecarlo::SweepAxis::n_satellites,
                                         {"100", "200", "400"}, 1);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t j = 0; j < cells[i].estimates.size(); ++j) {
            CHECK(cells[i].estimates[j].value == again[i].estimates[j].value);
        }
    }

    const auto beta_cells =
        montecarlo::sweep(base, montecarlo::SweepAxis::beta, {"-10", "0", "10", "20"}, 2);
    REQUIRE(beta_cells.size() == 4);
    for (std::size_t i = 1; i < beta_cells.size(); ++i) {
        CHECK(beta_cells[i].cfg.seed == base.seed);  // shared drops
        CHECK(beta_cells[i].estimates[0].value <= beta_cells[i - 1].estimates[0].value + 1e-12);
    }

    const auto schemes =
        montecarlo::sweep(base, montecarlo::SweepAxis::scheme, {"jt_mrt", "dps"}, 2);
    CHECK(schemes.size() == 2);
    CHECK_THROWS_AS(montecarlo::sweep(base, montecarlo::SweepAxis::scheme, {}, 1),
                    std::invalid_argument);
}
