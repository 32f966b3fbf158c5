#include "clustersim/formation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace clustersim::formation {

double kepler_period_s(const geometry::BodyConstants& body) {
    constexpr double mu_earth_m3_s2 = 3.986004418e14;
    const double a_m = body.orbital_radius_km() * 1000.0;
    return 2.0 * std::numbers::pi * std::sqrt(a_m * a_m * a_m / mu_earth_m3_s2);
}

ClusterLayout build_cluster(const geometry::UnitDirection& master, std::size_t n_slaves,
                            FormationKind kind, double polar_angle_rad, double phase_rad,
                            rng::Stream& stream) {
    if (!(polar_angle_rad > 0.0 && polar_angle_rad < std::numbers::pi / 2.0)) {
        throw std::invalid_argument("build_cluster: polar_angle_rad must be in (0, pi/2)");
    }
    ClusterLayout out;
    out.master = master;
    out.kind = kind;
    out.cap = {master, polar_angle_rad};
    out.phase_rad = (kind == FormationKind::circular) ? phase_rad : 0.0;
    if (n_slaves > 0) {
        out.slaves = (kind == FormationKind::circular)
                         ? geometry::place_circular(out.cap, n_slaves, phase_rad)
                         : geometry::sample_cap_uniform(out.cap, n_slaves, stream);
    }
    return out;
}

ClusterLayout advance_phase(const ClusterLayout& cluster, const FormationClock& clock,
                            double dt_s) {
    if (cluster.kind != FormationKind::circular) {
        throw std::invalid_argument("advance_phase: phase is undefined for uniform clusters");
    }
    if (!(clock.period_s > 0.0)) {
        throw std::invalid_argument("advance_phase: period_s must be positive");
    }
    const double alpha =
        static_cast<double>(clock.spin) * 2.0 * std::numbers::pi * dt_s / clock.period_s;
    ClusterLayout out = cluster;
    out.phase_rad = cluster.phase_rad + alpha;
    for (auto& s : out.slaves) {
        s = geometry::rotate_about(s, cluster.master, alpha);
    }
    return out;
}

ClusterLayout drop_satellite(const ClusterLayout& cluster, std::size_t index) {
    if (index == 0) {
        throw std::invalid_argument("drop_satellite: the master cannot be removed");
    }
    if (index >= cluster.size()) {
        throw std::out_of_range("drop_satellite: no satellite at this index");
    }
    ClusterLayout out = cluster;
    out.slaves.erase(out.slaves.begin() + static_cast<std::ptrdiff_t>(index - 1));
    return out;
}

double max_isl_distance_km(const ClusterLayout& cluster, const geometry::BodyConstants& body) {
    const double ro = body.orbital_radius_km();
    double max_chord = 0.0;
    for (const auto& s : cluster.slaves) {
        const double dx = s.x - cluster.master.x;
        const double dy = s.y - cluster.master.y;
        const double dz = s.z - cluster.master.z;
        const double chord = ro * std::sqrt(dx * dx + dy * dy + dz * dz);
        if (chord > max_chord) max_chord = chord;
    }
    return max_chord;
}

}  // namespace clustersim::formation
