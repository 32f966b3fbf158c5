// clustersim: Monte Carlo evaluation of clustered LEO downlink networks and
// a fronthaul split advisor. Subcommands: run, sweep, advise, selftest.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

#include <CLI11.hpp>

#include "clustersim/config.hpp"
#include "clustersim/version.hpp"
#include "selftest.hpp"

namespace {

namespace cs = clustersim;

cs::montecarlo::ExperimentConfig load_config(const std::string& path,
                                             const std::optional<std::uint64_t>& seed_flag) {
    cs::montecarlo::ExperimentConfig cfg =
        path.empty() ? cs::montecarlo::ExperimentConfig{} : cs::config::parse_config(path);
    // precedence: config < CLUSTERSIM_SEED < --seed
    if (const char* env = std::getenv("CLUSTERSIM_SEED")) {
        cfg.seed = std::strtoull(env, nullptr, 10);
    }
    if (seed_flag) cfg.seed = *seed_flag;
    cfg.validate();
    return cfg;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

void write_outputs(const std::string& out_dir, const char* csv_name,
                   const cs::config::RunOutput& result) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    write_file(dir / csv_name, result.csv);
    write_file(dir / "manifest.json", result.manifest.dump(2) + "\n");
    std::cout << "wrote " << (dir / csv_name).string() << " and " << (dir / "manifest.json").string()
              << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"clustered LEO downlink network simulator"};
    app.set_version_flag("--version", cs::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed_flag;
    int workers = 0;  // 0: one per hardware thread

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config (or a previous run's manifest)");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--seed", seed_flag, "override the experiment seed");
        cmd->add_option("--workers", workers, "worker threads (0 = all hardware threads)");
    };

    auto* run = app.add_subcommand("run", "estimate coverage and ergodic capacity");
    add_common(run);

    auto* swp = app.add_subcommand("sweep", "sweep one axis and emit plot-ready CSV");
    add_common(swp);
    std::string axis;
    std::string values;
    swp->add_option("--axis", axis, "n_satellites | beta | scheme | formation")->required();
    swp->add_option("--values", values, "comma-separated axis values")->required();

    auto* adv = app.add_subcommand("advise", "fronthaul split feasibility for a cluster");
    double theta_c_deg = 1.0, altitude_km = 600.0, earth_radius_km = 6371.0;
    std::size_t n_slaves = 9;
    double cap_ul = 100.0, cap_dl = 100.0, processing_ms = 0.0, margin = 1.0;
    bool as_json = false;
    adv->add_option("--theta-c-deg", theta_c_deg, "cluster cap polar angle, degrees");
    adv->add_option("--altitude-km", altitude_km, "orbit altitude");
    adv->add_option("--earth-radius-km", earth_radius_km, "Earth radius");
    adv->add_option("--n-slaves", n_slaves, "slave count (worst case sits on the cap boundary)");
    adv->add_option("--capacity-ul-gbps", cap_ul, "ISL uplink capacity");
    adv->add_option("--capacity-dl-gbps", cap_dl, "ISL downlink capacity");
    adv->add_option("--processing-ms", processing_ms, "per-hop processing latency");
    adv->add_option("--margin", margin, "safety margin multiplier on rate requirements");
    adv->add_flag("--json", as_json, "machine-readable output");

    auto* selftest = app.add_subcommand("selftest", "run the built-in oracle and property checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const auto cfg = load_config(config_path, seed_flag);
            write_outputs(out_dir, "results.csv", cs::config::execute_run(cfg, workers));
            return 0;
        }
        if (swp->parsed()) {
            const auto cfg = load_config(config_path, seed_flag);
            const auto result = cs::config::execute_sweep(
                cfg, cs::montecarlo::parse_axis(axis), cs::config::split_values(values), workers);
            write_outputs(out_dir, "sweep.csv", result);
            return 0;
        }
        if (adv->parsed()) {
            const cs::geometry::BodyConstants body{earth_radius_km, altitude_km};
            cs::rng::Stream unused(0);
            const auto cluster = cs::formation::build_cluster(
                {0.0, 0.0, 1.0}, n_slaves, cs::formation::FormationKind::circular,
                theta_c_deg * std::numbers::pi / 180.0, 0.0, unused);
            const auto report =
                cs::fronthaul::advise(cluster, body, cap_ul, cap_dl, processing_ms, margin);
            if (as_json) {
                std::cout << cs::config::advice_json(report).dump(2) << "\n";
            } else {
                std::cout << cs::config::advice_text(report);
            }
            return 0;
        }
        if (selftest->parsed()) {
            return cs::selftest::run_all(std::cout);
        }
    } catch (const cs::config::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
