#pragma once

#include <array>
#include <string>
#include <vector>

#include "clustersim/formation.hpp"
#include "clustersim/geometry.hpp"

namespace clustersim::fronthaul {

enum class SplitKind { intra_phy, intra_mac, pdcp_rlc };

std::string split_name(SplitKind kind);

// Fronthaul requirements of one functional split between the master
// (CU side) and a slave (DU side). Latency bounds are one-way; the upper
// bound is the feasibility limit.
struct SplitOption {
    SplitKind kind = SplitKind::intra_phy;
    double ul_rate_gbps = 0.0;
    double dl_rate_gbps = 0.0;
    double latency_low_ms = 0.0;
    double latency_high_ms = 0.0;
    const char* notes = "";
};

// Parameters behind the catalog's rate requirements; stored as metadata,
// never recomputed.
struct CatalogAssumptions {
    double bandwidth_mhz = 100.0;
    int qam_order = 256;
    int antenna_ports = 32;
    int mimo_layers = 8;
};

const std::array<SplitOption, 3>& split_catalog();
const CatalogAssumptions& catalog_assumptions();

struct IslProfile {
    double capacity_ul_gbps = 0.0;
    double capacity_dl_gbps = 0.0;
    double one_way_latency_ms = 0.0;
};

// Propagation at c plus processing.
double isl_latency_ms(double distance_km, double processing_ms);

// Options whose rate requirements fit the ISL capacities (scaled by
// safety_margin) and whose latency ceiling tolerates the ISL latency.
std::vector<SplitOption> feasible_splits(const IslProfile& isl, double safety_margin = 1.0);

struct SplitAssessment {
    SplitOption option;
    bool ul_ok = false;
    bool dl_ok = false;
    bool latency_ok = false;
    bool feasible = false;
    std::string limiting;  // "none" or comma-joined failed criteria
};

struct AdviceReport {
    double max_isl_distance_km = 0.0;
    IslProfile isl;
    double safety_margin = 1.0;
    std::vector<SplitAssessment> entries;
    // how the requirement numbers are read when comparing
    std::string interpretation =
        "latency requirements are hard upper bounds on one-way fronthaul latency; "
        "rate requirements must not exceed ISL capacity";
};

// Cluster geometry -> worst-case ISL latency -> per-option verdicts.
AdviceReport advise(const formation::ClusterLayout& cluster, const geometry::BodyConstants& body,
                    double capacity_ul_gbps, double capacity_dl_gbps, double processing_ms,
                    double safety_margin = 1.0);

}  // namespace clustersim::fronthaul
