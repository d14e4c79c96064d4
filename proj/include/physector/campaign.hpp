#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "physector/extraction.hpp"
#include "physector/measurement.hpp"
#include "physector/simulate.hpp"
#include "physector/states.hpp"

namespace physector {

enum class DataMode { fresh, shared_subsets };

// One simulation + extraction run. `state` is a preset name (cat, mixture,
// hybrid-qubit, hybrid-qutrit, hybrid-ququart) or a path to a state JSON
// file. fov_dim = 0 picks the preset's natural dimension.
struct CampaignConfig {
    std::string state = "cat";
    int fov_dim = 0;            // modeled levels D; doubles as the FOV cap
    int n_sets = 200;           // measurement sets M
    int outcomes_per_set = 40;  // J
    int total_outcomes = 256;   // base measurement size in shared-subsets mode
    long long n_events = 10'000'000;
    double alpha = 0.05;
    std::uint64_t seed = 1;
    DataMode data_mode = DataMode::fresh;
    LevelOrdering order = LevelOrdering::hint;
    bool identity_set = false;  // prepend the basis-projector measurement
    std::string out_dir = ".";
};

struct CampaignResult {
    ExtractionReport report;
    std::vector<CommutingMeasurement> sets;
    std::vector<FrequencyRecord> data;
};

/// Preset named after the scenario it reproduces: cat, mixture,
/// hybrid-qubit, hybrid-qutrit, hybrid-ququart.
CampaignConfig demo_config(const std::string& name);

/// State for a preset name, a path to a state JSON file otherwise.
/// n_levels = 0 keeps the preset default (cat/mixture 30, hybrid 4).
DiagonalState resolve_state(const std::string& spec, Eigen::Index n_levels = 0);

/// Simulates the configured measurement sets and runs the extraction.
/// Per-set seeds derive from config.seed via a splittable scheme, so runs
/// are reproducible and sets can be evaluated concurrently.
CampaignResult run_campaign(const CampaignConfig& config);

/// Figure-2-style re-analysis: n_sets random outcome subsets of a single
/// measured dataset, each of size outcomes_per_set, frequencies restricted
/// without renormalization.
std::pair<std::vector<CommutingMeasurement>, std::vector<FrequencyRecord>>
shared_subset_analysis(const CommutingMeasurement& base, const FrequencyRecord& record,
                       int n_sets, int outcomes_per_set, std::uint64_t seed);

CampaignConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CampaignConfig& config);

std::string to_string(DataMode mode);
DataMode data_mode_from_string(const std::string& name);

}  // namespace physector
