#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "clustersim/channel.hpp"
#include "clustersim/formation.hpp"
#include "clustersim/geometry.hpp"
#include "clustersim/rng.hpp"

namespace clustersim::transmission {

enum class Scheme { unclustered, jt_mrt, jt_egt, dps };
enum class InterfererPolicy { all_active, one_per_cluster };
enum class MrtPowerBudget { per_satellite, cluster_total };

struct SchemeConfig {
    Scheme scheme = Scheme::jt_mrt;
    InterfererPolicy interferer_policy = InterfererPolicy::all_active;
    MrtPowerBudget mrt_power_budget = MrtPowerBudget::cluster_total;

    // dps requires one_per_cluster; unclustered requires all_active
    void validate() const;
};

// One network drop. Either clustered (clusters populated) or unclustered
// (satellites populated). cluster_index/first_member_index keep the original
// global indices so a realization pruned of provably invisible clusters
// replays the same random substreams as the full one.
struct NetworkRealization {
    bool is_clustered = false;
    std::vector<formation::ClusterLayout> clusters;
    std::vector<std::size_t> cluster_index;       // original index per entry
    std::vector<std::size_t> first_member_index;  // global index of each master
    std::vector<geometry::UnitDirection> satellites;
    geometry::GroundTerminal terminal;
    geometry::BodyConstants body;

    static NetworkRealization clustered_net(std::vector<formation::ClusterLayout> clusters,
                                            geometry::GroundTerminal terminal,
                                            geometry::BodyConstants body);
    static NetworkRealization unclustered_net(std::vector<geometry::UnitDirection> satellites,
                                              geometry::GroundTerminal terminal,
                                              geometry::BodyConstants body);
};

// Serving unit picked by associate(): entry index into clusters or satellites.
struct Serving {
    std::size_t entry = 0;
    double slant_range_km = 0.0;
};

struct SinrSample {
    double desired_W = 0.0;
    double interference_W = 0.0;
    double noise_W = 0.0;
    double sinr = 0.0;
    bool outage = false;
};

// Fading power by global satellite index. Keyed by index rather than drawn
// sequentially so interference policies replay identical link fading.
using FadingField = std::function<double(std::size_t global_sat_index)>;

// Uniform member pick for an interfering cluster, keyed by the cluster's
// original index for the same replay reason.
using MemberPicker = std::function<std::size_t(std::size_t cluster_index, std::size_t n_members)>;

// Minimum master slant range among visible masters (clustered) or minimum
// satellite slant range (unclustered). Ties break to the lowest index.
// nullopt when nothing is visible: the drop is an outage.
std::optional<Serving> associate(const NetworkRealization& net, double min_elevation_rad = 0.0);

double desired_power_dps(std::span<const double> member_powers);
double desired_power_jt_egt(std::span<const double> member_powers);
double desired_power_jt_mrt(std::span<const double> member_powers, MrtPowerBudget budget_mode);

// Received powers of the serving cluster's visible members, master first.
// Unclustered serving yields a single entry.
std::vector<double> member_powers(const NetworkRealization& net, const Serving& serving,
                                  const channel::LinkBudget& budget, double min_elevation_rad,
                                  const FadingField& fading);

// Incoherent sum over interfering transmitters visible to the terminal.
// all_active: every non-serving satellite transmits. one_per_cluster: each
// non-serving cluster contributes one member named by pick (its own
// scheduling, uniform at random, independent of our terminal); the serving
// cluster never interferes with itself.
double interference_power(const NetworkRealization& net, const Serving& serving,
                          const SchemeConfig& scheme, const channel::LinkBudget& budget,
                          double min_elevation_rad, const FadingField& fading,
                          const MemberPicker& pick);

// Uniform pick backed by a counter-based substream per cluster.
MemberPicker uniform_member_picker(std::uint64_t choice_key);

SinrSample make_sinr(double desired_W, double interference_W, double noise_W);

SinrSample outage_sample(double noise_W);

}  // namespace clustersim::transmission
