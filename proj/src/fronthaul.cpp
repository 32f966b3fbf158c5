#include "clustersim/fronthaul.hpp"

#include <stdexcept>

namespace clustersim::fronthaul {

namespace {
constexpr double kSpeedOfLight_km_per_ms = 299792.458 / 1000.0;
}

std::string split_name(SplitKind kind) {
    switch (kind) {
        case SplitKind::intra_phy: return "intra_phy";
        case SplitKind::intra_mac: return "intra_mac";
        case SplitKind::pdcp_rlc: return "pdcp_rlc";
    }
    return "";
}

const std::array<SplitOption, 3>& split_catalog() {
    static const std::array<SplitOption, 3> catalog{{
        {SplitKind::intra_phy, 86.1, 86.1, 0.0, 0.1,
         "slave keeps low-PHY and RF only; cheapest slave payload; ideal for "
         "coherent cooperation; needs near-perfect fronthaul"},
        {SplitKind::intra_mac, 3.0, 4.0, 0.0, 1.0,
         "slave runs its own HARQ below a split MAC; modest fronthaul; some "
         "cooperative schemes limited; CU/DU scheduling interface grows"},
        {SplitKind::pdcp_rlc, 3.0, 4.0, 1.0, 10.0,
         "slave runs RLC/MAC/PHY; tolerant of long, imperfect links; heavier "
         "slave payload; coherent cooperation impractical"},
    }};
    return catalog;
}

const CatalogAssumptions& catalog_assumptions() {
    static const CatalogAssumptions a{};
    return a;
}

double isl_latency_ms(double distance_km, double processing_ms) {
    if (distance_km < 0.0) {
        throw std::invalid_argument("isl_latency_ms: distance must be nonnegative");
    }
    return distance_km / kSpeedOfLight_km_per_ms + processing_ms;
}

namespace {

SplitAssessment assess(const SplitOption& opt, const IslProfile& isl, double margin) {
    SplitAssessment a;
    a.option = opt;
    a.ul_ok = opt.ul_rate_gbps * margin <= isl.capacity_ul_gbps;
    a.dl_ok = opt.dl_rate_gbps * margin <= isl.capacity_dl_gbps;
    a.latency_ok = opt.latency_high_ms >= isl.one_way_latency_ms;
    a.feasible = a.ul_ok && a.dl_ok && a.latency_ok;
    if (a.feasible) {
        a.limiting = "none";
    } else {
        std::string lim;
        auto add = [&lim](const char* what) {
            if (!lim.empty()) lim += ",";
            lim += what;
        };
        if (!a.ul_ok) add("ul_rate");
        if (!a.dl_ok) add("dl_rate");
        if (!a.latency_ok) add("latency");
        a.limiting = lim;
    }
    return a;
}

}  // namespace

std::vector<SplitOption> feasible_splits(const IslProfile& isl, double safety_margin) {
    std::vector<SplitOption> out;
    for (const auto& opt : split_catalog()) {
        if (assess(opt, isl, safety_margin).feasible) out.push_back(opt);
    }
    return out;
}

AdviceReport advise(const formation::ClusterLayout& cluster, const geometry::BodyConstants& body,
                    double capacity_ul_gbps, double capacity_dl_gbps, double processing_ms,
                    double safety_margin) {
    AdviceReport report;
    report.max_isl_distance_km = formation::max_isl_distance_km(cluster, body);
    report.isl = {capacity_ul_gbps, capacity_dl_gbps,
                  isl_latency_ms(report.max_isl_distance_km, processing_ms)};
    report.safety_margin = safety_margin;
    for (const auto& opt : split_catalog()) {
        report.entries.push_back(assess(opt, report.isl, safety_margin));
    }
    return report;
}

}  // namespace clustersim::fronthaul
