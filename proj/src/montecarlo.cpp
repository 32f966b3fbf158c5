#include "clustersim/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace clustersim::montecarlo {

namespace {

// substream purposes under (seed, drop_index, purpose, [index])
enum Purpose : std::uint64_t {
    kPositions = 1,
    kFormation = 2,
    kFading = 3,
    kChoice = 4,
};

constexpr double kZ95 = 1.959963984540054;

double deg2rad(double d) { return d * std::numbers::pi / 180.0; }

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

std::size_t ExperimentConfig::n_masters() const {
    return static_cast<std::size_t>(
        std::llround(static_cast<double>(n_satellites) * master_fraction));
}

std::size_t ExperimentConfig::cluster_members(std::size_t c) const {
    const std::size_t m = n_masters();
    const std::size_t slaves = n_satellites - m;
    return 1 + slaves / m + (c < slaves % m ? 1 : 0);
}

std::size_t ExperimentConfig::first_member_index(std::size_t c) const {
    const std::size_t m = n_masters();
    const std::size_t slaves = n_satellites - m;
    return c * (1 + slaves / m) + std::min<std::size_t>(c, slaves % m);
}

void ExperimentConfig::validate() const {
    require(n_satellites >= 1, "n_satellites: must be >= 1");
    require(master_fraction > 0.0 && master_fraction <= 1.0,
            "master_fraction: must be in (0, 1]");
    require(n_drops >= 1, "n_drops: must be >= 1");
    require(theta_c_deg > 0.0 && theta_c_deg < 90.0, "theta_c_deg: must be in (0, 90)");
    require(body.earth_radius_km > 0.0, "earth_radius_km: must be positive");
    require(body.altitude_km > 0.0, "altitude_km: must be positive");
    require(budget.carrier_hz > 0.0, "carrier_hz: must be positive");
    require(budget.bandwidth_hz > 0.0, "bandwidth_hz: must be positive");
    require(budget.pathloss_exponent >= 2.0, "pathloss_exponent: must be >= 2");
    require(budget.beamwidth_3dB_deg > 0.0 && budget.beamwidth_3dB_deg < 180.0,
            "beamwidth_3dB_deg: must be in (0, 180)");
    require(fading.b > 0.0, "fading_b: must be positive");
    require(fading.m > 0.0, "fading_m: must be positive");
    require(fading.omega >= 0.0, "fading_omega: must be nonnegative");
    require(min_elevation_deg >= -90.0 && min_elevation_deg < 90.0,
            "min_elevation_deg: must be in [-90, 90)");
    require(formation_period_s > 0.0, "formation_period_s: must be positive");
    scheme.validate();
    if (clustered()) {
        require(n_masters() >= 1, "master_fraction: yields zero clusters");
    }
}

transmission::NetworkRealization build_realization(const ExperimentConfig& cfg,
                                                   std::size_t drop_index, bool prune) {
    const geometry::GroundTerminal terminal{{0.0, 0.0, 1.0}, cfg.budget.rx_gain_dB};
    const double theta_c = deg2rad(cfg.theta_c_deg);
    rng::Stream positions = rng::substream(cfg.seed, drop_index, kPositions);

    if (!cfg.clustered()) {
        auto sats = geometry::sample_sphere_bpp(cfg.n_satellites, positions);
        if (cfg.debug_pin_zenith && !sats.empty()) sats[0] = terminal.direction;
        return transmission::NetworkRealization::unclustered_net(std::move(sats), terminal,
                                                                 cfg.body);
    }

    const std::size_t n_masters = cfg.n_masters();
    auto masters = geometry::sample_sphere_bpp(n_masters, positions);
    if (cfg.debug_pin_zenith && !masters.empty()) masters[0] = terminal.direction;

    // clusters entirely below the mask cannot serve or interfere
    const double psi_max = geometry::max_central_angle_rad(cfg.body, deg2rad(cfg.min_elevation_deg));
    const double cos_reach = std::cos(std::fmin(std::numbers::pi, psi_max + theta_c));

    transmission::NetworkRealization net;
    net.is_clustered = true;
    net.terminal = terminal;
    net.body = cfg.body;
    for (std::size_t c = 0; c < n_masters; ++c) {
        if (prune && masters[c].dot(terminal.direction) < cos_reach) continue;
        const std::size_t n_slaves = cfg.cluster_members(c) - 1;
        rng::Stream fstream = rng::substream(cfg.seed, drop_index, kFormation, c);
        double phase = 0.0;
        if (cfg.formation == formation::FormationKind::circular && n_slaves > 0) {
            phase = 2.0 * std::numbers::pi * fstream.uniform01();
        }
        net.clusters.push_back(formation::build_cluster(masters[c], n_slaves, cfg.formation,
                                                        theta_c, phase, fstream));
        net.cluster_index.push_back(c);
        net.first_member_index.push_back(cfg.first_member_index(c));
    }
    return net;
}

transmission::SinrSample run_drop(const ExperimentConfig& cfg, std::size_t drop_index) {
    const double noise = channel::noise_power_W(cfg.budget);
    const double min_elev = deg2rad(cfg.min_elevation_deg);
    const auto net = build_realization(cfg, drop_index, /*prune=*/true);

    const auto serving = transmission::associate(net, min_elev);
    if (!serving) return transmission::outage_sample(noise);

    const transmission::FadingField fading = [&cfg, drop_index](std::size_t sat) {
        if (cfg.debug_unit_fading) return 1.0;
        rng::Stream s = rng::substream(cfg.seed, drop_index, kFading, sat);
        return channel::sample_shadowed_rician_power(cfg.fading, s);
    };

    const auto gammas = transmission::member_powers(net, *serving, cfg.budget, min_elev, fading);
    double desired = 0.0;
    switch (cfg.scheme.scheme) {
        case transmission::Scheme::unclustered:
            desired = gammas.empty() ? 0.0 : gammas.front();
            break;
        case transmission::Scheme::dps:
            desired = gammas.empty() ? 0.0 : transmission::desired_power_dps(gammas);
            break;
        case transmission::Scheme::jt_egt:
            desired = gammas.empty() ? 0.0 : transmission::desired_power_jt_egt(gammas);
            break;
        case transmission::Scheme::jt_mrt:
            desired = gammas.empty()
                          ? 0.0
                          : transmission::desired_power_jt_mrt(gammas, cfg.scheme.mrt_power_budget);
            break;
    }

    const auto pick =
        transmission::uniform_member_picker(rng::derive(cfg.seed, drop_index, kChoice));
    const double interference = transmission::interference_power(
        net, *serving, cfg.scheme, cfg.budget, min_elev, fading, pick);
    return transmission::make_sinr(desired, interference, noise);
}

std::vector<transmission::SinrSample> simulate_drops(const ExperimentConfig& cfg, int workers) {
    cfg.validate();
    const std::size_t n = cfg.n_drops;
    std::vector<transmission::SinrSample> out(n);

    std::size_t w = workers > 0 ? static_cast<std::size_t>(workers)
                                : std::max(1u, std::thread::hardware_concurrency());
    w = std::min(w, n);
    if (w <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = run_drop(cfg, i);
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        try {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                out[i] = run_drop(cfg, i);
            }
        } catch (...) {
            std::scoped_lock lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(w - 1);
    for (std::size_t t = 0; t + 1 < w; ++t) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return out;
}

namespace {

void warn_small_sample(const ExperimentConfig& cfg) {
    if (cfg.n_drops < 100) {
        std::fprintf(stderr, "warning: n_drops=%zu is below 100; confidence intervals unreliable\n",
                     cfg.n_drops);
    }
}

MetricEstimate wilson(std::size_t hits, std::size_t n, const ExperimentConfig& cfg,
                      MetricEstimate::Metric metric) {
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(hits) / nn;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / nn;
    const double half =
        kZ95 * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    MetricEstimate e;
    e.metric = metric;
    e.value = p;
    e.ci95_halfwidth = half;
    e.n_drops = n;
    e.seed = cfg.seed;
    return e;
}

}  // namespace

std::vector<MetricEstimate> coverage_from_samples(const std::vector<transmission::SinrSample>& s,
                                                  const ExperimentConfig& cfg) {
    warn_small_sample(cfg);
    std::vector<MetricEstimate> out;
    out.reserve(cfg.beta_grid_dB.size());
    for (double beta_dB : cfg.beta_grid_dB) {
        const double beta = std::pow(10.0, beta_dB / 10.0);
        std::size_t hits = 0;
        for (const auto& x : s) {
            if (x.sinr > beta) ++hits;  // strict: "higher than a threshold"
        }
        MetricEstimate e = wilson(hits, s.size(), cfg, MetricEstimate::Metric::coverage);
        e.threshold_dB = beta_dB;
        out.push_back(e);
    }
    return out;
}

MetricEstimate capacity_from_samples(const std::vector<transmission::SinrSample>& s,
                                     const ExperimentConfig& cfg) {
    warn_small_sample(cfg);
    double mean = 0.0, m2 = 0.0;
    std::size_t k = 0;
    for (const auto& x : s) {
        const double c = std::log2(1.0 + x.sinr);
        ++k;
        const double delta = c - mean;
        mean += delta / static_cast<double>(k);
        m2 += delta * (c - mean);
    }
    MetricEstimate e;
    e.metric = MetricEstimate::Metric::ergodic_capacity;
    e.value = mean;
    if (k >= 2) {
        const double sd = std::sqrt(m2 / static_cast<double>(k - 1));
        e.ci95_halfwidth = kZ95 * sd / std::sqrt(static_cast<double>(k));
    }
    e.n_drops = s.size();
    e.seed = cfg.seed;
    return e;
}

MetricEstimate throughput_from_capacity(const MetricEstimate& capacity,
                                        const ExperimentConfig& cfg) {
    MetricEstimate e = capacity;
    e.metric = MetricEstimate::Metric::throughput_bps;
    e.value *= cfg.budget.bandwidth_hz;
    e.ci95_halfwidth *= cfg.budget.bandwidth_hz;
    return e;
}

MetricEstimate outage_from_samples(const std::vector<transmission::SinrSample>& s,
                                   const ExperimentConfig& cfg) {
    std::size_t hits = 0;
    for (const auto& x : s) {
        if (x.outage) ++hits;
    }
    return wilson(hits, s.size(), cfg, MetricEstimate::Metric::outage);
}

std::vector<MetricEstimate> estimate_coverage(const ExperimentConfig& cfg, int workers) {
    return coverage_from_samples(simulate_drops(cfg, workers), cfg);
}

MetricEstimate estimate_ergodic_capacity(const ExperimentConfig& cfg, int workers) {
    return capacity_from_samples(simulate_drops(cfg, workers), cfg);
}

SweepAxis parse_axis(const std::string& name) {
    if (name == "n_satellites") return SweepAxis::n_satellites;
    if (name == "beta") return SweepAxis::beta;
    if (name == "scheme") return SweepAxis::scheme;
    if (name == "formation") return SweepAxis::formation;
    throw std::invalid_argument("axis: expected one of n_satellites, beta, scheme, formation");
}

std::string axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::n_satellites: return "n_satellites";
        case SweepAxis::beta: return "beta";
        case SweepAxis::scheme: return "scheme";
        case SweepAxis::formation: return "formation";
    }
    return "";
}

void apply_scheme_string(ExperimentConfig& cfg, const std::string& scheme) {
    using transmission::InterfererPolicy;
    using transmission::Scheme;
    if (scheme == "unclustered") {
        cfg.scheme.scheme = Scheme::unclustered;
        cfg.scheme.interferer_policy = InterfererPolicy::all_active;
    } else if (scheme == "jt_mrt") {
        cfg.scheme.scheme = Scheme::jt_mrt;
        cfg.scheme.interferer_policy = InterfererPolicy::all_active;
    } else if (scheme == "jt_egt") {
        cfg.scheme.scheme = Scheme::jt_egt;
        cfg.scheme.interferer_policy = InterfererPolicy::all_active;
    } else if (scheme == "dps") {
        cfg.scheme.scheme = Scheme::dps;
        cfg.scheme.interferer_policy = InterfererPolicy::one_per_cluster;
    } else {
        throw std::invalid_argument(
            "scheme: expected one of unclustered, jt_mrt, jt_egt, dps");
    }
}

void apply_formation_string(ExperimentConfig& cfg, const std::string& kind) {
    if (kind == "circular") {
        cfg.formation = formation::FormationKind::circular;
    } else if (kind == "uniform") {
        cfg.formation = formation::FormationKind::uniform;
    } else {
        throw std::invalid_argument("formation: expected circular or uniform");
    }
}

std::uint64_t cell_seed(std::uint64_t base_seed, const std::string& axis,
                        const std::string& value) {
    return rng::derive(base_seed, rng::fnv1a(axis), rng::fnv1a(value));
}

std::vector<SweepCell> sweep(const ExperimentConfig& base, SweepAxis axis,
                             const std::vector<std::string>& values, int workers) {
    if (values.empty()) throw std::invalid_argument("sweep: values must be nonempty");
    std::vector<SweepCell> cells;
    cells.reserve(values.size());

    if (axis == SweepAxis::beta) {
        // thresholds replay one shared set of drops
        ExperimentConfig cfg = base;
        cfg.beta_grid_dB.clear();
        for (const auto& v : values) cfg.beta_grid_dB.push_back(std::stod(v));
        const auto samples = simulate_drops(cfg, workers);
        const auto rows = coverage_from_samples(samples, cfg);
        for (std::size_t i = 0; i < values.size(); ++i) {
            cells.push_back({axis_name(axis), values[i], cfg, {rows[i]}});
        }
        return cells;
    }

    for (const auto& v : values) {
        ExperimentConfig cfg = base;
        switch (axis) {
            case SweepAxis::n_satellites: {
                const long long n = std::stoll(v);
                if (n < 1) throw std::invalid_argument("n_satellites: must be >= 1");
                cfg.n_satellites = static_cast<std::size_t>(n);
                break;
            }
            case SweepAxis::scheme:
                apply_scheme_string(cfg, v);
                break;
            case SweepAxis::formation:
                apply_formation_string(cfg, v);
                break;
            case SweepAxis::beta:
                break;  // handled above
        }
        cfg.seed = cell_seed(base.seed, axis_name(axis), v);
        const auto samples = simulate_drops(cfg, workers);
        SweepCell cell{axis_name(axis), v, cfg, {}};
        auto cov = coverage_from_samples(samples, cfg);
        cell.estimates.insert(cell.estimates.end(), cov.begin(), cov.end());
        const auto capacity = capacity_from_samples(samples, cfg);
        cell.estimates.push_back(capacity);
        cell.estimates.push_back(throughput_from_capacity(capacity, cfg));
        cell.estimates.push_back(outage_from_samples(samples, cfg));
        cells.push_back(std::move(cell));
    }
    return cells;
}

}  // namespace clustersim::montecarlo
