#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "physector/campaign.hpp"
#include "physector/errors.hpp"
#include "physector/extraction.hpp"
#include "physector/io.hpp"
#include "physector/rng.hpp"

namespace {

using namespace physector;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitFovExhausted = 3;
constexpr int kExitFovViolation = 4;

// Counts and dimensions accept scientific notation (--n-events 1e9).
long long parse_count(const std::string& text, const std::string& flag) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(value) || value < 0 || value > 9.2e18 ||
            std::abs(value - std::llround(value)) > 1e-6 * std::max(1.0, std::abs(value))) {
            throw ValidationError("");
        }
        return std::llround(value);
    } catch (const std::exception&) {
        throw ValidationError(flag + " expects a nonnegative integer, got '" + text + "'");
    }
}

std::uint64_t parse_seed(const std::string& text) {
    try {
        std::size_t used = 0;
        const unsigned long long value = std::stoull(text, &used);
        if (used == text.size()) {
            return value;
        }
    } catch (const std::exception&) {
    }
    return static_cast<std::uint64_t>(parse_count(text, "--seed"));
}

LevelOrdering parse_order(const std::string& text) {
    if (text == "hint") {
        return LevelOrdering::hint;
    }
    if (text == "default") {
        return LevelOrdering::natural;
    }
    throw ValidationError("--order expects 'hint' or 'default', got '" + text + "'");
}

// Flags shared by the subcommands; only flags the user actually passed
// override the preset / config-file values.
struct CommonFlags {
    std::string alpha, n_events, n_sets, outcomes, total_outcomes, fov_dim, seed;
    std::string data_mode, order, out_dir, config_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "significance level in (0, 1)");
        cmd->add_option("--n-events", n_events, "detection events per dataset (accepts 1e7)");
        cmd->add_option("--n-sets", n_sets, "number of measurement sets");
        cmd->add_option("--outcomes", outcomes, "outcomes per measurement set");
        cmd->add_option("--total-outcomes", total_outcomes,
                        "base measurement size for shared-subsets mode");
        cmd->add_option("--fov-dim", fov_dim, "working dimension (basis levels 0..D-1)");
        cmd->add_option("--seed", seed, "master seed; per-set seeds are split from it");
        cmd->add_option("--data-mode", data_mode, "fresh | shared-subsets");
        cmd->add_option("--order", order, "level ordering: hint | default");
        cmd->add_option("--out-dir", out_dir, "directory for report.json / report.csv");
        cmd->add_option("--config", config_path, "campaign config JSON; flags override it");
    }

    CampaignConfig resolve(CLI::App* cmd, CampaignConfig config) const {
        if (cmd->count("--config") > 0) {
            config = config_from_json(load_json(config_path));
        }
        if (cmd->count("--alpha") > 0) {
            config.alpha = std::stod(alpha);
        }
        if (cmd->count("--n-events") > 0) {
            config.n_events = parse_count(n_events, "--n-events");
        }
        if (cmd->count("--n-sets") > 0) {
            config.n_sets = static_cast<int>(parse_count(n_sets, "--n-sets"));
        }
        if (cmd->count("--outcomes") > 0) {
            config.outcomes_per_set = static_cast<int>(parse_count(outcomes, "--outcomes"));
        }
        if (cmd->count("--total-outcomes") > 0) {
            config.total_outcomes =
                static_cast<int>(parse_count(total_outcomes, "--total-outcomes"));
        }
        if (cmd->count("--fov-dim") > 0) {
            config.fov_dim = static_cast<int>(parse_count(fov_dim, "--fov-dim"));
        }
        if (cmd->count("--seed") > 0) {
            config.seed = parse_seed(seed);
        }
        if (cmd->count("--data-mode") > 0) {
            config.data_mode = data_mode_from_string(data_mode);
        }
        if (cmd->count("--order") > 0) {
            config.order = parse_order(order);
        }
        if (cmd->count("--out-dir") > 0) {
            config.out_dir = out_dir;
        }
        return config;
    }
};

std::string sector_to_string(const Sector& sector) {
    std::string out = "{";
    for (std::size_t i = 0; i < sector.size(); ++i) {
        out += (i ? ", " : "") + std::to_string(sector[i]);
    }
    return out + "}";
}

void write_report_files(const ExtractionReport& report, const std::string& out_dir) {
    fs::create_directories(out_dir);
    save_json(to_json(report), (fs::path(out_dir) / "report.json").string());
    std::ofstream csv(fs::path(out_dir) / "report.csv", std::ios::binary);
    csv << report_to_csv(report);
}

int finish_extraction(const ExtractionReport& report, const std::string& out_dir) {
    write_report_files(report, out_dir);
    std::cout << "alpha: " << report.alpha << "\n"
              << "status: " << to_string(report.status) << "\n"
              << "extracted sector: " << sector_to_string(report.extracted_sector) << "\n"
              << "d_phys: " << report.d_phys() << "\n";
    for (const auto& warning : report.warnings) {
        std::cerr << "warning: " << warning << "\n";
    }
    std::cout << "wrote " << (fs::path(out_dir) / "report.json").string() << ", "
              << (fs::path(out_dir) / "report.csv").string() << "\n";
    return report.status == ExtractionStatus::accepted ? kExitOk : kExitFovExhausted;
}

int cmd_demo(const std::string& name, CLI::App* cmd, const CommonFlags& flags) {
    const CampaignConfig config = flags.resolve(cmd, demo_config(name));
    const CampaignResult result = run_campaign(config);

    fs::create_directories(config.out_dir);
    nlohmann::json counts = nlohmann::json::array();
    for (const auto& record : result.data) {
        counts.push_back(to_json(record));
    }
    save_json(counts, (fs::path(config.out_dir) / "counts.json").string());
    save_json(to_json(config), (fs::path(config.out_dir) / "config.json").string());
    return finish_extraction(result.report, config.out_dir);
}

int cmd_extract(const std::string& measurement_path, const std::string& counts_path,
                CLI::App* cmd, const CommonFlags& flags) {
    CampaignConfig defaults;
    defaults.data_mode = DataMode::fresh;
    defaults.n_sets = 1;
    const CampaignConfig config = flags.resolve(cmd, defaults);

    const CommutingMeasurement measurement = load_measurement(measurement_path);
    const FrequencyRecord record = load_record(counts_path);
    if (record.n_outcomes() != measurement.n_outcomes()) {
        throw ShapeError("counts file has " + std::to_string(record.n_outcomes()) +
                         " outcomes, measurement has " +
                         std::to_string(measurement.n_outcomes()));
    }

    std::vector<CommutingMeasurement> sets;
    std::vector<FrequencyRecord> data;
    if (config.data_mode == DataMode::shared_subsets) {
        std::tie(sets, data) =
            shared_subset_analysis(measurement, record, config.n_sets,
                                   config.outcomes_per_set, split_seed(config.seed, 2));
    } else {
        sets.push_back(measurement);
        data.push_back(record);
    }

    PsepOptions options;
    options.alpha = config.alpha;
    options.ordering = config.order;
    if (config.fov_dim > 0) {
        if (config.fov_dim > measurement.n_levels()) {
            throw FovError("requested field of view " + std::to_string(config.fov_dim) +
                           " exceeds the " + std::to_string(measurement.n_levels()) +
                           " measured levels");
        }
        options.fov.resize(static_cast<std::size_t>(config.fov_dim));
        std::iota(options.fov.begin(), options.fov.end(), 0);
    }
    return finish_extraction(run_psep(sets, data, options), config.out_dir);
}

int cmd_simulate(const std::string& state_spec, const std::string& measurement_spec,
                 CLI::App* cmd, const CommonFlags& flags) {
    CampaignConfig defaults;
    defaults.n_events = 1'000'000;
    const CampaignConfig config = flags.resolve(cmd, defaults);

    const DiagonalState state = resolve_state(state_spec, config.fov_dim);
    CommutingMeasurement measurement;
    bool generated = true;
    if (measurement_spec == "identity") {
        measurement = identity_measurement(state.n_levels());
    } else if (measurement_spec == "random") {
        measurement = random_measurement(state.n_levels(), config.outcomes_per_set,
                                         split_seed(config.seed, 0));
    } else {
        measurement = load_measurement(measurement_spec);
        generated = false;
    }
    if (measurement.n_levels() != state.n_levels()) {
        throw ShapeError("measurement covers " + std::to_string(measurement.n_levels()) +
                         " levels, state has " + std::to_string(state.n_levels()));
    }

    const ProbabilityVector p = born_probabilities(measurement, state);
    const FrequencyRecord record =
        sample_frequencies(p, config.n_events, split_seed(config.seed, 1));

    fs::create_directories(config.out_dir);
    const fs::path counts_path = fs::path(config.out_dir) / "counts.json";
    save_json(to_json(record), counts_path.string());
    std::cout << "wrote " << counts_path.string();
    if (generated) {
        const fs::path m_path = fs::path(config.out_dir) / "measurement.json";
        save_json(to_json(measurement), m_path.string());
        std::cout << ", " << m_path.string();
    }
    std::cout << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"physector: extract the physical sector of a quantum state from "
                 "commuting-measurement frequency data"};
    app.require_subcommand(1);

    std::string demo_name;
    CLI::App* demo = app.add_subcommand(
        "demo", "run a preconfigured simulation campaign and extract its sector");
    demo->add_option("name", demo_name,
                     "cat | mixture | hybrid-qubit | hybrid-qutrit | hybrid-ququart")
        ->required();
    CommonFlags demo_flags;
    demo_flags.attach(demo);

    std::string measurement_path, counts_path;
    CLI::App* extract =
        app.add_subcommand("extract", "run the extraction on externally provided data");
    extract->add_option("measurement", measurement_path, "measurement JSON or CSV file")
        ->required();
    extract->add_option("counts", counts_path, "counts JSON file")->required();
    CommonFlags extract_flags;
    extract_flags.attach(extract);

    std::string state_spec = "cat", measurement_spec = "identity";
    CLI::App* simulate =
        app.add_subcommand("simulate", "write a seeded multinomial counts file");
    simulate->add_option("--state", state_spec,
                         "cat | mixture | hybrid-* | path to state JSON");
    simulate->add_option("--measurement", measurement_spec,
                         "identity | random | path to measurement file");
    CommonFlags simulate_flags;
    simulate_flags.attach(simulate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (demo->parsed()) {
            return cmd_demo(demo_name, demo, demo_flags);
        }
        if (extract->parsed()) {
            return cmd_extract(measurement_path, counts_path, extract, extract_flags);
        }
        return cmd_simulate(state_spec, measurement_spec, simulate, simulate_flags);
    } catch (const FovError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFovViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
