#include "selftest.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "clustersim/channel.hpp"
#include "clustersim/config.hpp"
#include "clustersim/fronthaul.hpp"
#include "clustersim/geometry.hpp"
#include "clustersim/montecarlo.hpp"
#include "clustersim/transmission.hpp"

namespace clustersim::selftest {

namespace {

struct Harness {
    std::ostream& out;
    int failures = 0;

    void check(const std::string& name, bool ok) {
        out << (ok ? "PASS  " : "FAIL  ") << name << "\n";
        if (!ok) ++failures;
    }
};

bool near(double a, double b, double rel) {
    return std::fabs(a - b) <= rel * std::fmax(std::fabs(a), std::fabs(b));
}

}  // namespace

int run_all(std::ostream& out) {
    Harness h{out};
    const channel::LinkBudget budget{};
    const geometry::BodyConstants body{};
    const double deg = std::numbers::pi / 180.0;

    // beam pattern calibration and boresight
    h.check("beam: half power exactly at half beamwidth",
            std::fabs(channel::beam_gain_linear(10.0 * deg, budget) / 1000.0 - 0.5) < 1e-9);
    h.check("beam: boresight gain 30 dBi",
            std::fabs(10.0 * std::log10(channel::beam_gain_linear(0.0, budget)) - 30.0) < 1e-12);

    // link budget arithmetic
    h.check("path gain at 1 m, exponent 2 reference",
            near(channel::path_gain_linear(1e-3, channel::LinkBudget{.pathloss_exponent = 2.0}),
                 1.4228584142858625e-4, 1e-9));
    h.check("noise power over 30 MHz", near(channel::noise_power_W(budget), 1.1943215116604957e-13, 1e-9));
    h.check("EIRP total", near(channel::eirp_total_W(budget), 7.53565929452874e10, 1e-9));

    // single visible link, unit fading, zenith
    {
        const geometry::GroundTerminal term{{0, 0, 1}, 0.0};
        const auto link = channel::received_power_W({0, 0, 1}, term, body, budget, 1.0);
        h.check("nadir link power", near(link.received_power_W, 4.9639704788942986e-11, 1e-9));
    }

    // combiners
    {
        const std::vector<double> g{1.0, 3.0, 2.0};
        h.check("dps picks the maximum", transmission::desired_power_dps(g) == 3.0);
        h.check("egt coherent sum",
                near(transmission::desired_power_jt_egt(g), 17.191508225450303, 1e-12));
        h.check("mrt cluster budget",
                transmission::desired_power_jt_mrt(g, transmission::MrtPowerBudget::cluster_total) == 6.0);
        h.check("mrt per-satellite equals egt",
                transmission::desired_power_jt_mrt(g, transmission::MrtPowerBudget::per_satellite) ==
                    transmission::desired_power_jt_egt(g));
        bool dominance = true;
        rng::Stream s(42);
        for (int i = 0; i < 200 && dominance; ++i) {
            std::vector<double> v(1 + static_cast<std::size_t>(s.uniform01() * 8));
            for (auto& x : v) x = s.uniform01() * 10.0;
            const double egt = transmission::desired_power_jt_egt(v);
            const double sum = transmission::desired_power_jt_mrt(v, transmission::MrtPowerBudget::cluster_total);
            const double dps = transmission::desired_power_dps(v);
            dominance = egt >= sum - 1e-12 && sum >= dps - 1e-12;
        }
        h.check("combiner dominance egt >= sum >= max", dominance);
    }

    // fading sampler mean
    {
        channel::ShadowedRicianParams p{};
        rng::Stream s(7);
        double acc = 0.0;
        const int n = 200000;
        for (int i = 0; i < n; ++i) acc += channel::sample_shadowed_rician_power(p, s);
        h.check("shadowed-Rician mean power", near(acc / n, p.mean_power(), 0.02));
    }

    // geometry oracles
    {
        const geometry::GroundTerminal term{{0, 0, 1}, 0.0};
        const geometry::UnitDirection horizon =
            geometry::make_unit(std::sin(std::acos(6371.0 / 6971.0)), 0.0, 6371.0 / 6971.0);
        h.check("slant range at the horizon",
                near(geometry::slant_range_km(horizon, term, body), 2829.3462142339527, 1e-6));
        h.check("off-boresight at the horizon",
                near(geometry::off_boresight_angle_rad(horizon, term, body),
                     std::asin(6371.0 / 6971.0), 1e-6));
        rng::Stream s(3);
        const geometry::CapSpec cap{{0, 0, 1}, 1.0 * deg};
        bool contained = true;
        for (const auto& d : geometry::sample_cap_uniform(cap, 10000, s)) {
            contained = contained && d.z >= std::cos(1.0 * deg) - 1e-12;
        }
        h.check("cap sampling containment", contained);
    }

    // fronthaul catalog and the 1-degree advisory
    {
        const auto& cat = fronthaul::split_catalog();
        h.check("catalog rates and latency ceilings",
                cat[0].ul_rate_gbps == 86.1 && cat[0].dl_rate_gbps == 86.1 &&
                    cat[0].latency_high_ms == 0.1 && cat[1].ul_rate_gbps == 3.0 &&
                    cat[1].dl_rate_gbps == 4.0 && cat[1].latency_high_ms == 1.0 &&
                    cat[2].ul_rate_gbps == 3.0 && cat[2].dl_rate_gbps == 4.0 &&
                    cat[2].latency_high_ms == 10.0);
        rng::Stream s(1);
        const auto cluster = formation::build_cluster({0, 0, 1}, 9, formation::FormationKind::circular,
                                                      1.0 * deg, 0.0, s);
        const auto report = fronthaul::advise(cluster, body, 100.0, 100.0, 0.0);
        h.check("1-degree cluster: intra_phy limited by latency",
                !report.entries[0].feasible && report.entries[0].limiting == "latency" &&
                    report.entries[1].feasible && report.entries[2].feasible);
    }

    // determinism of the drop pipeline
    {
        montecarlo::ExperimentConfig cfg;
        cfg.n_satellites = 200;
        cfg.n_drops = 50;
        cfg.seed = 99;
        const auto a = montecarlo::simulate_drops(cfg, 1);
        const auto b = montecarlo::simulate_drops(cfg, 2);
        bool same = true;
        for (std::size_t i = 0; i < a.size(); ++i) {
            same = same && a[i].sinr == b[i].sinr && a[i].desired_W == b[i].desired_W &&
                   a[i].interference_W == b[i].interference_W;
        }
        h.check("drops identical for 1 and 2 workers", same);
    }

    // pinned single-satellite SNR
    {
        montecarlo::ExperimentConfig cfg;
        montecarlo::apply_scheme_string(cfg, "unclustered");
        cfg.n_satellites = 1;
        cfg.n_drops = 10;
        cfg.debug_unit_fading = true;
        cfg.debug_pin_zenith = true;
        const auto est = montecarlo::estimate_ergodic_capacity(cfg, 1);
        h.check("single zenith link capacity matches the closed form",
                near(est.value, std::log2(1.0 + 415.6310030782887), 1e-9) && est.ci95_halfwidth == 0.0);
    }

    out << (h.failures == 0 ? "selftest: all checks passed\n"
                            : "selftest: " + std::to_string(h.failures) + " check(s) failed\n");
    return h.failures;
}

}  // namespace clustersim::selftest
