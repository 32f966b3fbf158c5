#pragma once

#include <cstddef>
#include <vector>

#include "clustersim/geometry.hpp"
#include "clustersim/rng.hpp"

namespace clustersim::formation {

enum class FormationKind { circular, uniform };

// One master plus its slaves on a spherical cap centered at the master.
// circular kind keeps every slave on the cap boundary; uniform kind scatters
// them area-uniformly inside the cap.
struct ClusterLayout {
    geometry::UnitDirection master;
    std::vector<geometry::UnitDirection> slaves;
    FormationKind kind = FormationKind::circular;
    geometry::CapSpec cap;       // cap.center == master
    double phase_rad = 0.0;      // circular kind only

    std::size_t size() const { return 1 + slaves.size(); }
};

// Phase-vs-time relation for the projected rotation of a circular cluster:
// one full relative revolution per period_s. spin picks the projected
// rotation sense (+1 or -1); the underlying dynamics do not pin it down.
struct FormationClock {
    double period_s = 5792.3341;  // Kepler period for the default 600 km orbit
    double t_s = 0.0;
    int spin = +1;
};

// Circular orbital period for the configured body, seconds.
double kepler_period_s(const geometry::BodyConstants& body);

// stream is consumed only by the uniform kind.
ClusterLayout build_cluster(const geometry::UnitDirection& master, std::size_t n_slaves,
                            FormationKind kind, double polar_angle_rad, double phase_rad,
                            rng::Stream& stream);

// Rigid rotation of the slave set about the master by 2*pi*dt/period.
// Rejects uniform clusters: they carry no phase.
ClusterLayout advance_phase(const ClusterLayout& cluster, const FormationClock& clock,
                            double dt_s);

// index 0 addresses the master and is rejected (master failure is a scenario
// level concern); index k >= 1 removes slave k-1. Survivors keep their slots.
ClusterLayout drop_satellite(const ClusterLayout& cluster, std::size_t index);

// Longest master-to-slave straight-line distance with both at orbital radius.
// 0 for a master-only cluster.
double max_isl_distance_km(const ClusterLayout& cluster, const geometry::BodyConstants& body);

}  // namespace clustersim::formation
