#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "clustersim/fronthaul.hpp"
#include "clustersim/montecarlo.hpp"

namespace clustersim::config {

// Raised for missing files, malformed JSON, unknown keys, or invariant
// violations. The message names the offending field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Strict schema: unknown keys are rejected with the nearest valid key
// suggested. Absent keys fall back to the defaults in ExperimentConfig.
// A run manifest (object with a "config" member) is accepted too, so any
// previous run can be reproduced from its manifest alone.
montecarlo::ExperimentConfig parse_config_json(const nlohmann::json& j);
montecarlo::ExperimentConfig parse_config(const std::string& path);

nlohmann::json config_to_json(const montecarlo::ExperimentConfig& cfg);

// 16 hex digits over the canonical config serialization.
std::string config_hash(const montecarlo::ExperimentConfig& cfg);

std::string scheme_string(const montecarlo::ExperimentConfig& cfg);
std::string formation_string(const montecarlo::ExperimentConfig& cfg);

// Fixed CSV header shared by run and sweep outputs.
extern const char* kCsvHeader;

std::string csv_rows(const montecarlo::ExperimentConfig& cfg,
                     const std::vector<montecarlo::MetricEstimate>& estimates);

struct RunOutput {
    std::string csv;            // header + rows
    nlohmann::json manifest;    // reproduces the run byte for byte
};

// Orchestration behind the CLI subcommands; kept out of main() so the exact
// bytes written to disk are testable.
RunOutput execute_run(const montecarlo::ExperimentConfig& cfg, int workers);
RunOutput execute_sweep(const montecarlo::ExperimentConfig& cfg, montecarlo::SweepAxis axis,
                        const std::vector<std::string>& values, int workers);

// Fronthaul report rendering for cmd_advise.
std::string advice_text(const fronthaul::AdviceReport& report);
nlohmann::json advice_json(const fronthaul::AdviceReport& report);

// "100,1000,10000" -> {"100","1000","10000"}
std::vector<std::string> split_values(const std::string& csv_list);

}  // namespace clustersim::config
