#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clustersim/channel.hpp"
#include "clustersim/formation.hpp"
#include "clustersim/geometry.hpp"
#include "clustersim/transmission.hpp"

namespace clustersim::montecarlo {

// Full description of one experiment. Every output is a pure function of
// this struct (seed included), whatever the worker count.
struct ExperimentConfig {
    std::size_t n_satellites = 1000;
    double master_fraction = 0.1;
    formation::FormationKind formation = formation::FormationKind::circular;
    double theta_c_deg = 1.0;
    transmission::SchemeConfig scheme{};
    geometry::BodyConstants body{};
    channel::LinkBudget budget{};
    channel::ShadowedRicianParams fading{};
    std::size_t n_drops = 20000;
    std::uint64_t seed = 1;
    std::vector<double> beta_grid_dB = {-10, -5, 0, 5, 10, 15, 20, 25, 30};
    double min_elevation_deg = 0.0;
    double formation_period_s = 5792.3341;

    // test hooks: freeze fading at 1 / pin the first satellite (or master)
    // to the terminal's zenith
    bool debug_unit_fading = false;
    bool debug_pin_zenith = false;

    bool clustered() const {
        return scheme.scheme != transmission::Scheme::unclustered;
    }
    // round(n_satellites * master_fraction)
    std::size_t n_masters() const;
    // members of cluster c, slaves spread round-robin so sizes differ by at most 1
    std::size_t cluster_members(std::size_t c) const;
    // global satellite index of cluster c's master
    std::size_t first_member_index(std::size_t c) const;

    void validate() const;  // throws std::invalid_argument naming the field
};

struct MetricEstimate {
    enum class Metric { coverage, ergodic_capacity, throughput_bps, outage };
    Metric metric = Metric::coverage;
    double value = 0.0;
    double ci95_halfwidth = 0.0;
    std::size_t n_drops = 0;
    std::uint64_t seed = 0;
    std::optional<double> threshold_dB;  // coverage only
};

// One drop: positions, clusters, fading, association, SINR. Deterministic in
// (cfg, drop_index). Outage is encoded in the sample, never thrown.
transmission::SinrSample run_drop(const ExperimentConfig& cfg, std::size_t drop_index);

// The materialized network behind run_drop. prune skips clusters that
// provably cannot reach the terminal; it never changes the drop's SINR
// because every substream is keyed by original indices.
transmission::NetworkRealization build_realization(const ExperimentConfig& cfg,
                                                   std::size_t drop_index, bool prune = true);

// All drops, order-insensitive parallel evaluation. workers <= 0 means one
// per hardware thread.
std::vector<transmission::SinrSample> simulate_drops(const ExperimentConfig& cfg,
                                                     int workers = 1);

// Estimators over precomputed samples (shared drops across thresholds).
std::vector<MetricEstimate> coverage_from_samples(const std::vector<transmission::SinrSample>& s,
                                                  const ExperimentConfig& cfg);
MetricEstimate capacity_from_samples(const std::vector<transmission::SinrSample>& s,
                                     const ExperimentConfig& cfg);
// capacity scaled by the configured bandwidth (figure units are ambiguous,
// so both are emitted)
MetricEstimate throughput_from_capacity(const MetricEstimate& capacity,
                                        const ExperimentConfig& cfg);
MetricEstimate outage_from_samples(const std::vector<transmission::SinrSample>& s,
                                   const ExperimentConfig& cfg);

// Convenience wrappers: simulate then estimate.
std::vector<MetricEstimate> estimate_coverage(const ExperimentConfig& cfg, int workers = 1);
MetricEstimate estimate_ergodic_capacity(const ExperimentConfig& cfg, int workers = 1);

enum class SweepAxis { n_satellites, beta, scheme, formation };

SweepAxis parse_axis(const std::string& name);
std::string axis_name(SweepAxis axis);

// Applies a scheme by name and resets the interferer policy to the scheme's
// default (one_per_cluster for dps, all_active otherwise).
void apply_scheme_string(ExperimentConfig& cfg, const std::string& scheme);
void apply_formation_string(ExperimentConfig& cfg, const std::string& kind);

struct SweepCell {
    std::string axis;
    std::string value;
    ExperimentConfig cfg;  // resolved config for the cell, seed included
    std::vector<MetricEstimate> estimates;
};

// Per-cell seeds derive from (seed, axis, value), except axis=beta which
// shares one set of drops across all thresholds.
std::uint64_t cell_seed(std::uint64_t base_seed, const std::string& axis,
                        const std::string& value);

std::vector<SweepCell> sweep(const ExperimentConfig& base, SweepAxis axis,
                             const std::vector<std::string>& values, int workers = 1);

}  // namespace clustersim::montecarlo
