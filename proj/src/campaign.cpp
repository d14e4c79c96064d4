#include "physector/campaign.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include <nlohmann/json.hpp>

#include "physector/errors.hpp"
#include "physector/io.hpp"
#include "physector/parallel.hpp"
#include "physector/rng.hpp"

namespace physector {

namespace {

constexpr double kCatAmplitude = 0.3536;
constexpr double kPi = std::numbers::pi;

// Wave-plate angles for the three hybrid scenarios. The qubit setting kills
// levels 2 and 3 exactly; the qutrit setting kills level 3 only; the ququart
// setting leaves every level occupied.
struct HybridAngles {
    double theta1, theta2, theta3;
};

HybridAngles hybrid_angles(const std::string& name) {
    if (name == "hybrid-qubit") {
        return {kPi / 4.0, 0.0, kPi / 8.0};
    }
    if (name == "hybrid-qutrit") {
        return {kPi / 6.0, 0.0, kPi / 6.0};
    }
    return {kPi / 6.0, kPi / 6.0, kPi / 6.0};  // hybrid-ququart
}

bool is_hybrid(const std::string& name) {
    return name.rfind("hybrid-", 0) == 0;
}

}  // namespace

CampaignConfig demo_config(const std::string& name) {
    CampaignConfig config;
    config.state = name;
    if (name == "cat" || name == "mixture") {
        config.fov_dim = 30;
        config.n_sets = 200;
        config.outcomes_per_set = 40;
        config.n_events = 10'000'000;
    } else if (is_hybrid(name)) {
        config.fov_dim = 4;
        config.n_sets = 100;
        config.outcomes_per_set = 8;
        config.n_events = 2'500'000;
        config.identity_set = true;
    } else {
        throw ValidationError("unknown demo '" + name +
                              "' (expected cat, mixture, hybrid-qubit, hybrid-qutrit "
                              "or hybrid-ququart)");
    }
    return config;
}

DiagonalState resolve_state(const std::string& spec, Eigen::Index n_levels) {
    if (spec == "cat") {
        return even_cat_diagonal(kCatAmplitude, n_levels > 0 ? n_levels : 30);
    }
    if (spec == "mixture") {
        return fock_mixture({{4, 0.25}, {9, 0.5}, {23, 0.25}}, n_levels > 0 ? n_levels : 30);
    }
    if (is_hybrid(spec)) {
        if (spec != "hybrid-qubit" && spec != "hybrid-qutrit" && spec != "hybrid-ququart") {
            throw ValidationError("unknown hybrid state '" + spec + "'");
        }
        if (n_levels > 0 && n_levels != 4) {
            throw ValidationError("hybrid states live on exactly 4 levels");
        }
        const HybridAngles angles = hybrid_angles(spec);
        return hybrid_pure_state(angles.theta1, angles.theta2, angles.theta3);
    }
    DiagonalState state = load_state(spec);
    if (n_levels > 0 && state.n_levels() != n_levels) {
        throw ValidationError("state file has " + std::to_string(state.n_levels()) +
                              " levels, expected " + std::to_string(n_levels));
    }
    return state;
}

CampaignResult run_campaign(const CampaignConfig& config) {
    if (config.n_sets < 1) {
        throw ValidationError("n_sets must be at least 1");
    }
    if (config.n_events < 1) {
        throw ValidationError("n_events must be at least 1");
    }
    if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
        throw ValidationError("alpha must lie in (0, 1)");
    }

    const DiagonalState state =
        resolve_state(config.state, config.fov_dim > 0 ? config.fov_dim : 0);
    const Eigen::Index n_levels = state.n_levels();

    CampaignResult result;
    const std::size_t n_sets = static_cast<std::size_t>(config.n_sets) +
                               (config.identity_set ? 1u : 0u);
    result.sets.resize(n_sets);
    result.data.resize(n_sets);

    if (config.data_mode == DataMode::fresh) {
        // Independent measurement and dataset per set; seeds are split per
        // set index so any subset of the work can run concurrently.
        parallel_for(n_sets, [&](std::size_t s) {
            const bool identity = config.identity_set && s == 0;
            result.sets[s] =
                identity ? identity_measurement(n_levels)
                         : random_measurement(n_levels, config.outcomes_per_set,
                                              split_seed(config.seed, 2 * s));
            const ProbabilityVector p = born_probabilities(result.sets[s], state);
            result.data[s] = sample_frequencies(p, config.n_events,
                                                split_seed(config.seed, 2 * s + 1));
        });
    } else {
        // One dataset on a large base measurement, re-analyzed through
        // random outcome subsets.
        const CommutingMeasurement base = random_measurement(
            n_levels, config.total_outcomes, split_seed(config.seed, 0));
        const ProbabilityVector p = born_probabilities(base, state);
        const FrequencyRecord shared =
            sample_frequencies(p, config.n_events, split_seed(config.seed, 1));
        auto [subset_sets, subset_data] =
            shared_subset_analysis(base, shared, config.n_sets, config.outcomes_per_set,
                                   split_seed(config.seed, 2));

        std::size_t offset = 0;
        if (config.identity_set) {
            result.sets[0] = identity_measurement(n_levels);
            const ProbabilityVector pid = born_probabilities(result.sets[0], state);
            result.data[0] =
                sample_frequencies(pid, config.n_events, split_seed(config.seed, 3));
            offset = 1;
        }
        for (std::size_t s = 0; s < subset_sets.size(); ++s) {
            result.sets[s + offset] = std::move(subset_sets[s]);
            result.data[s + offset] = std::move(subset_data[s]);
        }
    }

    PsepOptions options;
    options.alpha = config.alpha;
    options.ordering = config.order;
    if (config.fov_dim > 0) {
        if (config.fov_dim > n_levels) {
            throw FovError("requested field of view " + std::to_string(config.fov_dim) +
                           " exceeds the " + std::to_string(n_levels) + " modeled levels");
        }
        options.fov.resize(static_cast<std::size_t>(config.fov_dim));
        std::iota(options.fov.begin(), options.fov.end(), 0);
    }
    result.report = run_psep(result.sets, result.data, options);
    return result;
}

std::pair<std::vector<CommutingMeasurement>, std::vector<FrequencyRecord>>
shared_subset_analysis(const CommutingMeasurement& base, const FrequencyRecord& record,
                       int n_sets, int outcomes_per_set, std::uint64_t seed) {
    if (n_sets < 1) {
        throw ValidationError("n_sets must be at least 1");
    }
    if (outcomes_per_set < 1 || outcomes_per_set > base.n_outcomes()) {
        throw ValidationError("outcomes_per_set must lie in [1, " +
                              std::to_string(base.n_outcomes()) + "]");
    }
    if (record.n_outcomes() != base.n_outcomes()) {
        throw ShapeError("record does not match the base measurement");
    }

    std::vector<CommutingMeasurement> sets(static_cast<std::size_t>(n_sets));
    std::vector<FrequencyRecord> data(static_cast<std::size_t>(n_sets));
    parallel_for(static_cast<std::size_t>(n_sets), [&](std::size_t s) {
        std::mt19937_64 rng(split_seed(seed, s));
        // Partial Fisher-Yates draw of outcomes_per_set distinct indices.
        std::vector<Eigen::Index> pool(static_cast<std::size_t>(base.n_outcomes()));
        std::iota(pool.begin(), pool.end(), 0);
        std::vector<Eigen::Index> picks;
        picks.reserve(static_cast<std::size_t>(outcomes_per_set));
        for (std::size_t i = 0; i < static_cast<std::size_t>(outcomes_per_set); ++i) {
            const std::size_t j =
                i + static_cast<std::size_t>(uniform_open01(rng) *
                                             static_cast<double>(pool.size() - i));
            std::swap(pool[i], pool[j]);
            picks.push_back(pool[i]);
        }
        sets[s] = subset(base, picks);
        data[s] = restrict_record(record, picks);
    });
    return {std::move(sets), std::move(data)};
}

CampaignConfig config_from_json(const nlohmann::json& j) {
    try {
        CampaignConfig config;
        config.state = j.value("state", config.state);
        config.fov_dim = j.value("fov_dim", config.fov_dim);
        config.n_sets = j.value("n_sets", config.n_sets);
        config.outcomes_per_set = j.value("outcomes_per_set", config.outcomes_per_set);
        config.total_outcomes = j.value("total_outcomes", config.total_outcomes);
        config.n_events = j.value("n_events", config.n_events);
        config.alpha = j.value("alpha", config.alpha);
        config.seed = j.value("seed", config.seed);
        if (j.contains("data_mode")) {
            config.data_mode = data_mode_from_string(j.at("data_mode").get<std::string>());
        }
        if (j.contains("order")) {
            const auto order = j.at("order").get<std::string>();
            if (order == "hint") {
                config.order = LevelOrdering::hint;
            } else if (order == "default") {
                config.order = LevelOrdering::natural;
            } else {
                throw ValidationError("unknown order '" + order + "'");
            }
        }
        config.identity_set = j.value("identity_set", config.identity_set);
        config.out_dir = j.value("out_dir", config.out_dir);
        return config;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed campaign config: ") + e.what());
    }
}

nlohmann::json to_json(const CampaignConfig& config) {
    return nlohmann::json{{"state", config.state},
                          {"fov_dim", config.fov_dim},
                          {"n_sets", config.n_sets},
                          {"outcomes_per_set", config.outcomes_per_set},
                          {"total_outcomes", config.total_outcomes},
                          {"n_events", config.n_events},
                          {"alpha", config.alpha},
                          {"seed", config.seed},
                          {"data_mode", to_string(config.data_mode)},
                          {"order", to_string(config.order)},
                          {"identity_set", config.identity_set},
                          {"out_dir", config.out_dir}};
}

std::string to_string(DataMode mode) {
    return mode == DataMode::fresh ? "fresh" : "shared-subsets";
}

DataMode data_mode_from_string(const std::string& name) {
    if (name == "fresh") {
        return DataMode::fresh;
    }
    if (name == "shared-subsets" || name == "shared_subsets") {
        return DataMode::shared_subsets;
    }
    throw ValidationError("unknown data mode '" + name + "' (expected fresh or shared-subsets)");
}

}  // namespace physector
