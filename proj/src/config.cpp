#include "clustersim/config.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "clustersim/version.hpp"

namespace clustersim::config {

using nlohmann::json;

namespace {

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "n_satellites", "master_fraction", "formation", "theta_c_deg",
        "scheme", "interferer_policy", "mrt_power_budget",
        "altitude_km", "earth_radius_km",
        "carrier_hz", "bandwidth_hz", "eirp_density_dBW_per_Hz", "noise_density_dBm_per_Hz",
        "pathloss_exponent", "tx_max_gain_dBi", "beamwidth_3dB_deg", "rx_gain_dB",
        "fading_b", "fading_m", "fading_omega",
        "n_drops", "seed", "beta_grid_dB", "min_elevation_deg", "formation_period_s",
        "debug_unit_fading", "debug_pin_zenith",
    };
    return keys;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string nearest_key(const std::string& key) {
    std::string best;
    double best_score = 1e18;
    for (const auto& k : known_keys()) {
        std::size_t prefix = 0;
        while (prefix < key.size() && prefix < k.size() && key[prefix] == k[prefix]) ++prefix;
        // a shared prefix is a stronger signal than raw edit distance
        const double score =
            static_cast<double>(edit_distance(key, k)) - 2.0 * static_cast<double>(prefix);
        if (score < best_score) {
            best_score = score;
            best = k;
        }
    }
    return best;
}

double get_number(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw ConfigError(std::string(key) + ": expected a number");
    return j[key].get<double>();
}

std::uint64_t get_u64(const json& j, const char* key, std::uint64_t fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_unsigned() && !j[key].is_number_integer()) {
        throw ConfigError(std::string(key) + ": expected an integer");
    }
    return j[key].get<std::uint64_t>();
}

std::size_t get_count(const json& j, const char* key, std::size_t fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer() && !j[key].is_number_unsigned()) {
        throw ConfigError(std::string(key) + ": expected an integer");
    }
    const auto v = j[key].get<long long>();
    if (v < 0) throw ConfigError(std::string(key) + ": must be nonnegative");
    return static_cast<std::size_t>(v);
}

bool get_bool(const json& j, const char* key, bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_boolean()) throw ConfigError(std::string(key) + ": expected a boolean");
    return j[key].get<bool>();
}

std::string get_string(const json& j, const char* key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) throw ConfigError(std::string(key) + ": expected a string");
    return j[key].get<std::string>();
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string iso_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string metric_name(montecarlo::MetricEstimate::Metric m) {
    switch (m) {
        case montecarlo::MetricEstimate::Metric::coverage: return "coverage";
        case montecarlo::MetricEstimate::Metric::ergodic_capacity: return "ergodic_capacity";
        case montecarlo::MetricEstimate::Metric::throughput_bps: return "throughput_bps";
        case montecarlo::MetricEstimate::Metric::outage: return "outage";
    }
    return "";
}

std::string formation_string_of(formation::FormationKind k) {
    return k == formation::FormationKind::circular ? "circular" : "uniform";
}

}  // namespace

montecarlo::ExperimentConfig parse_config_json(const json& root) {
    if (!root.is_object()) throw ConfigError("config: expected a JSON object");

    // a manifest wraps the config it ran with; accept it directly
    const json& j = (root.contains("config") && root["config"].is_object()) ? root["config"] : root;

    for (const auto& item : j.items()) {
        const auto& keys = known_keys();
        if (std::find(keys.begin(), keys.end(), item.key()) == keys.end()) {
            throw ConfigError("unknown key '" + item.key() + "'; did you mean '" +
                              nearest_key(item.key()) + "'?");
        }
    }

    montecarlo::ExperimentConfig cfg;
    cfg.n_satellites = get_count(j, "n_satellites", cfg.n_satellites);
    cfg.master_fraction = get_number(j, "master_fraction", cfg.master_fraction);
    cfg.theta_c_deg = get_number(j, "theta_c_deg", cfg.theta_c_deg);
    cfg.body.altitude_km = get_number(j, "altitude_km", cfg.body.altitude_km);
    cfg.body.earth_radius_km = get_number(j, "earth_radius_km", cfg.body.earth_radius_km);
    cfg.budget.carrier_hz = get_number(j, "carrier_hz", cfg.budget.carrier_hz);
    cfg.budget.bandwidth_hz = get_number(j, "bandwidth_hz", cfg.budget.bandwidth_hz);
    cfg.budget.eirp_density_dBW_per_Hz =
        get_number(j, "eirp_density_dBW_per_Hz", cfg.budget.eirp_density_dBW_per_Hz);
    cfg.budget.noise_density_dBm_per_Hz =
        get_number(j, "noise_density_dBm_per_Hz", cfg.budget.noise_density_dBm_per_Hz);
    cfg.budget.pathloss_exponent = get_number(j, "pathloss_exponent", cfg.budget.pathloss_exponent);
    cfg.budget.tx_max_gain_dBi = get_number(j, "tx_max_gain_dBi", cfg.budget.tx_max_gain_dBi);
    cfg.budget.beamwidth_3dB_deg = get_number(j, "beamwidth_3dB_deg", cfg.budget.beamwidth_3dB_deg);
    cfg.budget.rx_gain_dB = get_number(j, "rx_gain_dB", cfg.budget.rx_gain_dB);
    cfg.fading.b = get_number(j, "fading_b", cfg.fading.b);
    cfg.fading.m = get_number(j, "fading_m", cfg.fading.m);
    cfg.fading.omega = get_number(j, "fading_omega", cfg.fading.omega);
    cfg.n_drops = get_count(j, "n_drops", cfg.n_drops);
    cfg.seed = get_u64(j, "seed", cfg.seed);
    cfg.min_elevation_deg = get_number(j, "min_elevation_deg", cfg.min_elevation_deg);
    cfg.formation_period_s = get_number(j, "formation_period_s", cfg.formation_period_s);
    cfg.debug_unit_fading = get_bool(j, "debug_unit_fading", cfg.debug_unit_fading);
    cfg.debug_pin_zenith = get_bool(j, "debug_pin_zenith", cfg.debug_pin_zenith);

    try {
        montecarlo::apply_scheme_string(cfg, get_string(j, "scheme", scheme_string(cfg)));
        montecarlo::apply_formation_string(
            cfg, get_string(j, "formation", formation_string_of(cfg.formation)));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    if (j.contains("interferer_policy")) {
        const auto p = j["interferer_policy"].get<std::string>();
        if (p == "all_active") {
            cfg.scheme.interferer_policy = transmission::InterfererPolicy::all_active;
        } else if (p == "one_per_cluster") {
            cfg.scheme.interferer_policy = transmission::InterfererPolicy::one_per_cluster;
        } else {
            throw ConfigError("interferer_policy: expected all_active or one_per_cluster");
        }
    }
    if (j.contains("mrt_power_budget")) {
        const auto p = j["mrt_power_budget"].get<std::string>();
        if (p == "per_satellite") {
            cfg.scheme.mrt_power_budget = transmission::MrtPowerBudget::per_satellite;
        } else if (p == "cluster_total") {
            cfg.scheme.mrt_power_budget = transmission::MrtPowerBudget::cluster_total;
        } else {
            throw ConfigError("mrt_power_budget: expected per_satellite or cluster_total");
        }
    }
    if (j.contains("beta_grid_dB")) {
        if (!j["beta_grid_dB"].is_array()) throw ConfigError("beta_grid_dB: expected an array");
        cfg.beta_grid_dB.clear();
        for (const auto& v : j["beta_grid_dB"]) {
            if (!v.is_number()) throw ConfigError("beta_grid_dB: entries must be numbers");
            cfg.beta_grid_dB.push_back(v.get<double>());
        }
    }

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

montecarlo::ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file not found: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    return parse_config_json(j);
}

std::string scheme_string(const montecarlo::ExperimentConfig& cfg) {
    switch (cfg.scheme.scheme) {
        case transmission::Scheme::unclustered: return "unclustered";
        case transmission::Scheme::jt_mrt: return "jt_mrt";
        case transmission::Scheme::jt_egt: return "jt_egt";
        case transmission::Scheme::dps: return "dps";
    }
    return "";
}

std::string formation_string(const montecarlo::ExperimentConfig& cfg) {
    if (!cfg.clustered()) return "none";
    return formation_string_of(cfg.formation);
}

json config_to_json(const montecarlo::ExperimentConfig& cfg) {
    json j;
    j["n_satellites"] = cfg.n_satellites;
    j["master_fraction"] = cfg.master_fraction;
    j["formation"] = formation_string_of(cfg.formation);
    j["theta_c_deg"] = cfg.theta_c_deg;
    j["scheme"] = scheme_string(cfg);
    j["interferer_policy"] =
        cfg.scheme.interferer_policy == transmission::InterfererPolicy::all_active
            ? "all_active"
            : "one_per_cluster";
    j["mrt_power_budget"] =
        cfg.scheme.mrt_power_budget == transmission::MrtPowerBudget::per_satellite
            ? "per_satellite"
            : "cluster_total";
    j["altitude_km"] = cfg.body.altitude_km;
    j["earth_radius_km"] = cfg.body.earth_radius_km;
    j["carrier_hz"] = cfg.budget.carrier_hz;
    j["bandwidth_hz"] = cfg.budget.bandwidth_hz;
    j["eirp_density_dBW_per_Hz"] = cfg.budget.eirp_density_dBW_per_Hz;
    j["noise_density_dBm_per_Hz"] = cfg.budget.noise_density_dBm_per_Hz;
    j["pathloss_exponent"] = cfg.budget.pathloss_exponent;
    j["tx_max_gain_dBi"] = cfg.budget.tx_max_gain_dBi;
    j["beamwidth_3dB_deg"] = cfg.budget.beamwidth_3dB_deg;
    j["rx_gain_dB"] = cfg.budget.rx_gain_dB;
    j["fading_b"] = cfg.fading.b;
    j["fading_m"] = cfg.fading.m;
    j["fading_omega"] = cfg.fading.omega;
    j["n_drops"] = cfg.n_drops;
    j["seed"] = cfg.seed;
    j["beta_grid_dB"] = cfg.beta_grid_dB;
    j["min_elevation_deg"] = cfg.min_elevation_deg;
    j["formation_period_s"] = cfg.formation_period_s;
    j["debug_unit_fading"] = cfg.debug_unit_fading;
    j["debug_pin_zenith"] = cfg.debug_pin_zenith;
    return j;
}

std::string config_hash(const montecarlo::ExperimentConfig& cfg) {
    const std::uint64_t h = rng::fnv1a(config_to_json(cfg).dump());
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

const char* kCsvHeader =
    "metric,scheme,formation,n_satellites,threshold_dB,value,ci95,n_drops,seed,config_hash";

std::string csv_rows(const montecarlo::ExperimentConfig& cfg,
                     const std::vector<montecarlo::MetricEstimate>& estimates) {
    const std::string hash = config_hash(cfg);
    std::ostringstream out;
    for (const auto& e : estimates) {
        out << metric_name(e.metric) << ',' << scheme_string(cfg) << ',' << formation_string(cfg)
            << ',' << cfg.n_satellites << ',';
        if (e.threshold_dB) out << format_double(*e.threshold_dB);
        out << ',' << format_double(e.value) << ',' << format_double(e.ci95_halfwidth) << ','
            << e.n_drops << ',' << e.seed << ',' << hash << '\n';
    }
    return out.str();
}

RunOutput execute_run(const montecarlo::ExperimentConfig& cfg, int workers) {
    RunOutput out;
    out.manifest["tool"] = "clustersim";
    out.manifest["version"] = kVersion;
    out.manifest["seed"] = cfg.seed;
    out.manifest["config"] = config_to_json(cfg);
    out.manifest["config_hash"] = config_hash(cfg);
    out.manifest["started_utc"] = iso_utc_now();

    const auto samples = montecarlo::simulate_drops(cfg, workers);
    std::vector<montecarlo::MetricEstimate> estimates =
        montecarlo::coverage_from_samples(samples, cfg);
    const auto capacity = montecarlo::capacity_from_samples(samples, cfg);
    estimates.push_back(capacity);
    estimates.push_back(montecarlo::throughput_from_capacity(capacity, cfg));
    estimates.push_back(montecarlo::outage_from_samples(samples, cfg));

    out.csv = std::string(kCsvHeader) + "\n" + csv_rows(cfg, estimates);
    out.manifest["cells"] = json::array({json{{"axis", ""}, {"value", ""}, {"seed", cfg.seed}}});
    out.manifest["finished_utc"] = iso_utc_now();
    return out;
}

RunOutput execute_sweep(const montecarlo::ExperimentConfig& cfg, montecarlo::SweepAxis axis,
                        const std::vector<std::string>& values, int workers) {
    RunOutput out;
    out.manifest["tool"] = "clustersim";
    out.manifest["version"] = kVersion;
    out.manifest["seed"] = cfg.seed;
    out.manifest["config"] = config_to_json(cfg);
    out.manifest["config_hash"] = config_hash(cfg);
    out.manifest["axis"] = montecarlo::axis_name(axis);
    out.manifest["values"] = values;
    out.manifest["started_utc"] = iso_utc_now();

    const auto cells = montecarlo::sweep(cfg, axis, values, workers);
    std::string csv = std::string(kCsvHeader) + "\n";
    json mcells = json::array();
    for (const auto& cell : cells) {
        csv += csv_rows(cell.cfg, cell.estimates);
        mcells.push_back(json{{"axis", cell.axis}, {"value", cell.value}, {"seed", cell.cfg.seed}});
    }
    out.csv = std::move(csv);
    out.manifest["cells"] = std::move(mcells);
    out.manifest["finished_utc"] = iso_utc_now();
    return out;
}

std::string advice_text(const fronthaul::AdviceReport& r) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "max ISL distance: %.3f km\n", r.max_isl_distance_km);
    out << line;
    std::snprintf(line, sizeof line, "one-way ISL latency: %.4f ms\n", r.isl.one_way_latency_ms);
    out << line;
    std::snprintf(line, sizeof line, "ISL capacity: %.1f/%.1f Gbps (UL/DL), margin x%.2f\n",
                  r.isl.capacity_ul_gbps, r.isl.capacity_dl_gbps, r.safety_margin);
    out << line;
    out << "option      UL-rate  DL-rate  latency  verdict\n";
    for (const auto& e : r.entries) {
        const std::string verdict =
            e.feasible ? "feasible" : "infeasible (limited by " + e.limiting + ")";
        std::snprintf(line, sizeof line, "%-11s %-8s %-8s %-8s %s\n",
                      fronthaul::split_name(e.option.kind).c_str(), e.ul_ok ? "pass" : "fail",
                      e.dl_ok ? "pass" : "fail", e.latency_ok ? "pass" : "fail", verdict.c_str());
        out << line;
    }
    out << "note: " << r.interpretation << "\n";
    return out.str();
}

nlohmann::json advice_json(const fronthaul::AdviceReport& r) {
    json j;
    j["max_isl_distance_km"] = r.max_isl_distance_km;
    j["one_way_latency_ms"] = r.isl.one_way_latency_ms;
    j["capacity_ul_gbps"] = r.isl.capacity_ul_gbps;
    j["capacity_dl_gbps"] = r.isl.capacity_dl_gbps;
    j["safety_margin"] = r.safety_margin;
    j["interpretation"] = r.interpretation;
    j["options"] = json::array();
    for (const auto& e : r.entries) {
        j["options"].push_back(json{
            {"name", fronthaul::split_name(e.option.kind)},
            {"ul_rate_gbps", e.option.ul_rate_gbps},
            {"dl_rate_gbps", e.option.dl_rate_gbps},
            {"latency_high_ms", e.option.latency_high_ms},
            {"ul_ok", e.ul_ok},
            {"dl_ok", e.dl_ok},
            {"latency_ok", e.latency_ok},
            {"feasible", e.feasible},
            {"limiting", e.limiting},
        });
    }
    return j;
}

std::vector<std::string> split_values(const std::string& csv_list) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : csv_list) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace clustersim::config
