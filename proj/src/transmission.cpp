#include "clustersim/transmission.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace clustersim::transmission {

namespace {

void check_nonnegative(std::span<const double> powers, const char* who) {
    if (powers.empty()) {
        throw std::invalid_argument(std::string(who) + ": empty power list");
    }
    for (double g : powers) {
        if (!(g >= 0.0)) {
            throw std::invalid_argument(std::string(who) + ": negative power");
        }
    }
}

// Single-link contribution of one transmitter toward the terminal, zero when
// it is below the mask.
double one_link_power(const geometry::UnitDirection& sat,
                      const geometry::GroundTerminal& terminal,
                      const geometry::BodyConstants& body, const channel::LinkBudget& budget,
                      const channel::BeamPattern& pattern, double eirp_W, double rx_gain,
                      double cos_psi_max, double fading) {
    const double cp = sat.dot(terminal.direction);
    if (cp < cos_psi_max) return 0.0;
    const double re = body.earth_radius_km;
    const double ro = body.orbital_radius_km();
    const double d_km = std::sqrt(std::fmax(0.0, re * re + ro * ro - 2.0 * re * ro * cp));
    const double cos_off = std::fmin(1.0, std::fmax(-1.0, (ro - re * cp) / d_km));
    const double sin_off = std::sqrt(std::fmax(0.0, 1.0 - cos_off * cos_off));
    return eirp_W * pattern.normalized_from_sin(sin_off) *
           channel::path_gain_linear(d_km, budget) * rx_gain * fading;
}

}  // namespace

void SchemeConfig::validate() const {
    if (scheme == Scheme::dps && interferer_policy != InterfererPolicy::one_per_cluster) {
        throw std::invalid_argument("SchemeConfig: dps requires interferer_policy one_per_cluster");
    }
    if (scheme == Scheme::unclustered && interferer_policy != InterfererPolicy::all_active) {
        throw std::invalid_argument("SchemeConfig: unclustered requires interferer_policy all_active");
    }
}

NetworkRealization NetworkRealization::clustered_net(
    std::vector<formation::ClusterLayout> clusters, geometry::GroundTerminal terminal,
    geometry::BodyConstants body) {
    NetworkRealization net;
    net.is_clustered = true;
    net.clusters = std::move(clusters);
    net.terminal = terminal;
    net.body = body;
    std::size_t next = 0;
    for (std::size_t c = 0; c < net.clusters.size(); ++c) {
        net.cluster_index.push_back(c);
        net.first_member_index.push_back(next);
        next += net.clusters[c].size();
    }
    return net;
}

NetworkRealization NetworkRealization::unclustered_net(
    std::vector<geometry::UnitDirection> satellites, geometry::GroundTerminal terminal,
    geometry::BodyConstants body) {
    NetworkRealization net;
    net.is_clustered = false;
    net.satellites = std::move(satellites);
    net.terminal = terminal;
    net.body = body;
    return net;
}

std::optional<Serving> associate(const NetworkRealization& net, double min_elevation_rad) {
    const double cos_psi_max = std::cos(geometry::max_central_angle_rad(net.body, min_elevation_rad));
    const double re = net.body.earth_radius_km;
    const double ro = net.body.orbital_radius_km();
    std::optional<Serving> best;
    auto consider = [&](std::size_t entry, const geometry::UnitDirection& dir) {
        const double cp = dir.dot(net.terminal.direction);
        if (cp < cos_psi_max) return;
        const double d = std::sqrt(std::fmax(0.0, re * re + ro * ro - 2.0 * re * ro * cp));
        if (!best || d < best->slant_range_km) {
            best = Serving{entry, d};
        }
    };
    if (net.is_clustered) {
        for (std::size_t c = 0; c < net.clusters.size(); ++c) {
            consider(c, net.clusters[c].master);
        }
    } else {
        for (std::size_t s = 0; s < net.satellites.size(); ++s) {
            consider(s, net.satellites[s]);
        }
    }
    return best;
}

double desired_power_dps(std::span<const double> member_powers) {
    check_nonnegative(member_powers, "desired_power_dps");
    double best = 0.0;
    for (double g : member_powers) best = std::fmax(best, g);
    return best;
}

double desired_power_jt_egt(std::span<const double> member_powers) {
    check_nonnegative(member_powers, "desired_power_jt_egt");
    double s = 0.0;
    for (double g : member_powers) s += std::sqrt(g);
    return s * s;
}

double desired_power_jt_mrt(std::span<const double> member_powers, MrtPowerBudget budget_mode) {
    check_nonnegative(member_powers, "desired_power_jt_mrt");
    if (budget_mode == MrtPowerBudget::cluster_total) {
        // beamforming gain under a shared power budget
        double s = 0.0;
        for (double g : member_powers) s += g;
        return s;
    }
    // per-satellite caps make full-power phase alignment optimal: same as EGT
    return desired_power_jt_egt(member_powers);
}

std::vector<double> member_powers(const NetworkRealization& net, const Serving& serving,
                                  const channel::LinkBudget& budget, double min_elevation_rad,
                                  const FadingField& fading) {
    const channel::BeamPattern pattern(budget);
    const double eirp = channel::eirp_total_W(budget);
    const double rx_gain = std::pow(10.0, net.terminal.rx_gain_dB / 10.0);
    const double cos_psi_max =
        std::cos(geometry::max_central_angle_rad(net.body, min_elevation_rad));

    std::vector<double> out;
    if (!net.is_clustered) {
        const auto& sat = net.satellites.at(serving.entry);
        const double p = one_link_power(sat, net.terminal, net.body, budget, pattern, eirp,
                                        rx_gain, cos_psi_max, fading(serving.entry));
        out.push_back(p);
        return out;
    }
    const auto& cluster = net.clusters.at(serving.entry);
    const std::size_t base = net.first_member_index.at(serving.entry);
    out.reserve(cluster.size());
    for (std::size_t k = 0; k < cluster.size(); ++k) {
        const auto& dir = (k == 0) ? cluster.master : cluster.slaves[k - 1];
        if (dir.dot(net.terminal.direction) < cos_psi_max) continue;  // below mask
        out.push_back(one_link_power(dir, net.terminal, net.body, budget, pattern, eirp, rx_gain,
                                     cos_psi_max, fading(base + k)));
    }
    return out;
}

MemberPicker uniform_member_picker(std::uint64_t choice_key) {
    return [choice_key](std::size_t cluster_index, std::size_t n_members) -> std::size_t {
        if (n_members <= 1) return 0;
        rng::Stream s(rng::derive(choice_key, cluster_index));
        auto pick = static_cast<std::size_t>(s.uniform01() * static_cast<double>(n_members));
        return pick < n_members ? pick : n_members - 1;
    };
}

double interference_power(const NetworkRealization& net, const Serving& serving,
                          const SchemeConfig& scheme, const channel::LinkBudget& budget,
                          double min_elevation_rad, const FadingField& fading,
                          const MemberPicker& pick) {
    const channel::BeamPattern pattern(budget);
    const double eirp = channel::eirp_total_W(budget);
    const double rx_gain = std::pow(10.0, net.terminal.rx_gain_dB / 10.0);
    const double cos_psi_max =
        std::cos(geometry::max_central_angle_rad(net.body, min_elevation_rad));

    double total = 0.0;
    if (!net.is_clustered) {
        for (std::size_t s = 0; s < net.satellites.size(); ++s) {
            if (s == serving.entry) continue;
            const double cp = net.satellites[s].dot(net.terminal.direction);
            if (cp < cos_psi_max) continue;
            total += one_link_power(net.satellites[s], net.terminal, net.body, budget, pattern,
                                    eirp, rx_gain, cos_psi_max, fading(s));
        }
        return total;
    }

    for (std::size_t c = 0; c < net.clusters.size(); ++c) {
        if (c == serving.entry) continue;
        const auto& cluster = net.clusters[c];
        const std::size_t base = net.first_member_index[c];
        if (scheme.interferer_policy == InterfererPolicy::one_per_cluster) {
            const std::size_t chosen = pick(net.cluster_index[c], cluster.size());
            const auto& dir = (chosen == 0) ? cluster.master : cluster.slaves[chosen - 1];
            const double cp = dir.dot(net.terminal.direction);
            if (cp < cos_psi_max) continue;
            total += one_link_power(dir, net.terminal, net.body, budget, pattern, eirp, rx_gain,
                                    cos_psi_max, fading(base + chosen));
        } else {
            for (std::size_t k = 0; k < cluster.size(); ++k) {
                const auto& dir = (k == 0) ? cluster.master : cluster.slaves[k - 1];
                const double cp = dir.dot(net.terminal.direction);
                if (cp < cos_psi_max) continue;
                total += one_link_power(dir, net.terminal, net.body, budget, pattern, eirp,
                                        rx_gain, cos_psi_max, fading(base + k));
            }
        }
    }
    return total;
}

SinrSample make_sinr(double desired_W, double interference_W, double noise_W) {
    if (!(desired_W >= 0.0) || !(interference_W >= 0.0) || !(noise_W > 0.0)) {
        throw std::invalid_argument("make_sinr: powers must be nonnegative and noise positive");
    }
    SinrSample s;
    s.desired_W = desired_W;
    s.interference_W = interference_W;
    s.noise_W = noise_W;
    s.sinr = desired_W / (interference_W + noise_W);
    s.outage = false;
    return s;
}

SinrSample outage_sample(double noise_W) {
    SinrSample s;
    s.noise_W = noise_W;
    s.outage = true;
    return s;
}

}  // namespace clustersim::transmission
