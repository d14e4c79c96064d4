#include "physector/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "physector/errors.hpp"

namespace physector {

namespace {

using nlohmann::json;

// %.17g round-trips doubles and keeps CSV byte-stable across runs.
std::string format_double(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json parse_json(const std::string& text, const std::string& origin) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw ValidationError("invalid JSON in " + origin);
    }
    return j;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

nlohmann::json to_json(const CommutingMeasurement& m) {
    json rows = json::array();
    for (Eigen::Index j = 0; j < m.n_outcomes(); ++j) {
        json row = json::array();
        for (Eigen::Index l = 0; l < m.n_levels(); ++l) {
            row.push_back(m.coefficients(j, l));
        }
        rows.push_back(std::move(row));
    }
    return json{{"n_outcomes", m.n_outcomes()},
                {"n_levels", m.n_levels()},
                {"complete", m.complete},
                {"coefficients", std::move(rows)}};
}

CommutingMeasurement measurement_from_json(const nlohmann::json& j) {
    try {
        const auto n_outcomes = j.at("n_outcomes").get<Eigen::Index>();
        const auto n_levels = j.at("n_levels").get<Eigen::Index>();
        const auto& rows = j.at("coefficients");
        if (n_outcomes < 1 || n_levels < 1) {
            throw ValidationError("measurement must have positive dimensions");
        }
        if (static_cast<Eigen::Index>(rows.size()) != n_outcomes) {
            throw ValidationError("coefficient row count does not match n_outcomes");
        }
        CommutingMeasurement m;
        m.complete = j.value("complete", false);
        m.coefficients = Matrix(n_outcomes, n_levels);
        for (Eigen::Index r = 0; r < n_outcomes; ++r) {
            const auto& row = rows.at(static_cast<std::size_t>(r));
            if (static_cast<Eigen::Index>(row.size()) != n_levels) {
                throw ValidationError("coefficient row " + std::to_string(r) +
                                      " does not match n_levels");
            }
            for (Eigen::Index c = 0; c < n_levels; ++c) {
                m.coefficients(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
            }
        }
        const auto problems = validate(m);
        if (!problems.empty()) {
            throw ValidationError("invalid measurement: " + problems.front());
        }
        return m;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed measurement JSON: ") + e.what());
    }
}

nlohmann::json to_json(const DiagonalState& state) {
    json diag = json::array();
    for (Eigen::Index l = 0; l < state.n_levels(); ++l) {
        diag.push_back(state.diag(l));
    }
    return json{{"n_levels", state.n_levels()}, {"diag", std::move(diag)}};
}

DiagonalState state_from_json(const nlohmann::json& j) {
    try {
        const auto n_levels = j.at("n_levels").get<Eigen::Index>();
        const auto& diag = j.at("diag");
        if (n_levels < 1 || static_cast<Eigen::Index>(diag.size()) != n_levels) {
            throw ValidationError("state diag length does not match n_levels");
        }
        DiagonalState state;
        state.diag = Vector(n_levels);
        double sum = 0.0;
        for (Eigen::Index l = 0; l < n_levels; ++l) {
            const double value = diag.at(static_cast<std::size_t>(l)).get<double>();
            if (!(value >= 0.0)) {
                throw ValidationError("negative diagonal entry at level " + std::to_string(l));
            }
            state.diag(l) = value;
            sum += value;
        }
        if (sum > 1.0 + 1e-12) {
            throw ValidationError("state diagonal sums to " + std::to_string(sum) + " > 1");
        }
        state.truncation_mass = std::max(0.0, 1.0 - sum);
        return state;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed state JSON: ") + e.what());
    }
}

nlohmann::json to_json(const FrequencyRecord& record) {
    return json{{"n_events", record.n_events},
                {"seed", record.seed},
                {"counts", record.counts}};
}

FrequencyRecord record_from_json(const nlohmann::json& j) {
    try {
        const auto counts = j.at("counts").get<std::vector<long long>>();
        const auto n_events = j.at("n_events").get<long long>();
        FrequencyRecord record = record_from_counts(counts, n_events);
        record.seed = j.value("seed", static_cast<std::int64_t>(-1));
        return record;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed counts JSON: ") + e.what());
    }
}

nlohmann::json to_json(const ExtractionReport& report) {
    json steps = json::array();
    for (const auto& step : report.steps) {
        steps.push_back(json{{"k", step.k},
                             {"subspace", step.subspace},
                             {"mean_b_sub", step.mean_b_sub},
                             {"std_b_sub", step.std_b_sub},
                             {"mean_w", step.mean_w},
                             {"mean_variance", step.mean_variance},
                             {"b_sub_per_set", step.b_sub_per_set}});
    }
    json mean_hint = json::array();
    for (Eigen::Index l = 0; l < report.mean_hint.size(); ++l) {
        mean_hint.push_back(report.mean_hint(l));
    }
    return json{{"alpha", report.alpha},
                {"status", to_string(report.status)},
                {"ordering", to_string(report.ordering)},
                {"extracted_sector", report.extracted_sector},
                {"d_phys", report.d_phys()},
                {"sorted_order", report.sorted_order},
                {"mean_hint", std::move(mean_hint)},
                {"warnings", report.warnings},
                {"steps", std::move(steps)}};
}

CommutingMeasurement measurement_from_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ValidationError("invalid CSV cell '" + cell + "'");
            }
        }
        if (!row.empty()) {
            rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) {
        throw ValidationError("measurement CSV has no rows");
    }
    const std::size_t n_levels = rows.front().size();
    CommutingMeasurement m;
    m.coefficients = Matrix(static_cast<Eigen::Index>(rows.size()),
                            static_cast<Eigen::Index>(n_levels));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != n_levels) {
            throw ValidationError("CSV row " + std::to_string(r) + " has " +
                                  std::to_string(rows[r].size()) + " cells, expected " +
                                  std::to_string(n_levels));
        }
        for (std::size_t c = 0; c < n_levels; ++c) {
            m.coefficients(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                rows[r][c];
        }
    }
    // Imported outcome lists carry no completeness promise.
    m.complete = false;
    const auto problems = validate(m);
    if (!problems.empty()) {
        throw ValidationError("invalid measurement: " + problems.front());
    }
    return m;
}

CommutingMeasurement load_measurement(const std::string& path) {
    const std::string text = read_file(path);
    if (ends_with(path, ".csv")) {
        return measurement_from_csv(text);
    }
    return measurement_from_json(parse_json(text, path));
}

DiagonalState load_state(const std::string& path) {
    return state_from_json(parse_json(read_file(path), path));
}

FrequencyRecord load_record(const std::string& path) {
    return record_from_json(parse_json(read_file(path), path));
}

void save_json(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write " + path);
    }
    out << j.dump(2) << '\n';
}

nlohmann::json load_json(const std::string& path) {
    return parse_json(read_file(path), path);
}

std::string report_to_csv(const ExtractionReport& report) {
    std::ostringstream out;
    out << "k,subspace_levels,mean_b_sub,std_b_sub,mean_w,mean_variance\n";
    for (const auto& step : report.steps) {
        out << step.k << ',';
        for (std::size_t i = 0; i < step.subspace.size(); ++i) {
            out << (i ? ";" : "") << step.subspace[i];
        }
        out << ',' << format_double(step.mean_b_sub) << ',' << format_double(step.std_b_sub)
            << ',' << format_double(step.mean_w) << ',' << format_double(step.mean_variance)
            << '\n';
    }
    return out.str();
}

std::string to_string(ExtractionStatus status) {
    return status == ExtractionStatus::accepted ? "accepted" : "fov-exhausted";
}

std::string to_string(LevelOrdering ordering) {
    return ordering == LevelOrdering::hint ? "hint" : "default";
}

}  // namespace physector
