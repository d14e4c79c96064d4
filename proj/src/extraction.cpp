#include "physector/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "physector/errors.hpp"
#include "physector/parallel.hpp"

namespace physector {

namespace {

// Below this, the plug-in variance is treated as exactly zero fluctuation:
// the decision is then conclusive instead of statistical.
constexpr double kDegenerateVariance = 1e-300;
constexpr double kDegenerateWTol = 1e-9;

void check_levels(const Sector& levels, Eigen::Index n_levels, const char* name) {
    std::set<int> seen;
    for (const int level : levels) {
        if (level < 0 || level >= n_levels) {
            throw ValidationError(std::string(name) + " level " + std::to_string(level) +
                                  " out of range");
        }
        if (!seen.insert(level).second) {
            throw ValidationError(std::string(name) + " level " + std::to_string(level) +
                                  " repeated");
        }
    }
}

Sector sort_by_hint(const Vector& hint, const Sector& levels) {
    Sector order = levels;
    std::stable_sort(order.begin(), order.end(),
                     [&hint](int a, int b) { return hint(a) > hint(b); });
    return order;
}

double mean_of(const std::vector<double>& values) {
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

double stddev_of(const std::vector<double>& values, double mean) {
    double acc = 0.0;
    for (const double v : values) {
        acc += (v - mean) * (v - mean);
    }
    return std::sqrt(acc / static_cast<double>(values.size()));
}

}  // namespace

std::pair<Vector, Sector> diagonal_hint(const CommutingMeasurement& m, const Vector& f) {
    if (f.size() != m.n_outcomes()) {
        throw ShapeError("frequency vector length " + std::to_string(f.size()) +
                         " does not match " + std::to_string(m.n_outcomes()) + " outcomes");
    }
    Vector hint = pseudoinverse(m.coefficients) * f;
    Sector all_levels(static_cast<std::size_t>(m.n_levels()));
    std::iota(all_levels.begin(), all_levels.end(), 0);
    return {hint, sort_by_hint(hint, all_levels)};
}

std::pair<Vector, Sector> diagonal_hint(const CommutingMeasurement& m,
                                        const FrequencyRecord& record) {
    return diagonal_hint(m, record.f);
}

DecisionObservable build_decision_observable(const CommutingMeasurement& m, const Sector& sub,
                                             const Sector& fov, double tol) {
    check_levels(fov, m.n_levels(), "fov");
    check_levels(sub, m.n_levels(), "subspace");
    const std::set<int> fov_set(fov.begin(), fov.end());
    for (const int level : sub) {
        if (fov_set.count(level) == 0) {
            throw ValidationError("subspace level " + std::to_string(level) +
                                  " outside the field of view");
        }
    }

    // One equation per fov level: sum_j y_j c(j, n) = t_n.
    const std::set<int> sub_set(sub.begin(), sub.end());
    const Eigen::Index rows = static_cast<Eigen::Index>(fov.size());
    Matrix system(rows, m.n_outcomes());
    Vector targets(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const int level = fov[static_cast<std::size_t>(i)];
        system.row(i) = m.coefficients.col(level).transpose();
        targets(i) = sub_set.count(level) > 0 ? 0.0 : 1.0;
    }

    SolveResult solve = min_norm_solve(system, targets);
    if (solve.residual_inf > tol) {
        std::ostringstream msg;
        msg << "subspace support test not representable by these outcomes: residual "
            << solve.residual_inf << " exceeds " << tol
            << " (field of view larger than the rank of the measured outcomes)";
        throw FovError(msg.str());
    }

    DecisionObservable obs;
    obs.y = std::move(solve.solution);
    obs.target_subspace = sub;
    obs.fov = fov;
    obs.achieved_diag = system * obs.y;
    obs.residual_inf = solve.residual_inf;
    obs.sum_y_sq = obs.y.squaredNorm();

    for (Eigen::Index i = 0; i < rows; ++i) {
        const int level = fov[static_cast<std::size_t>(i)];
        if (sub_set.count(level) == 0 && obs.achieved_diag(i) <= tol) {
            std::ostringstream msg;
            msg << "positivity failure: achieved diagonal " << obs.achieved_diag(i)
                << " at level " << level << " is not strictly positive";
            throw FovError(msg.str());
        }
    }
    return obs;
}

DecisionStatistic decision_statistic(const DecisionObservable& obs, const Vector& f,
                                     long long n_events) {
    if (f.size() != obs.y.size()) {
        throw ShapeError("frequency vector length " + std::to_string(f.size()) +
                         " does not match " + std::to_string(obs.y.size()) + " outcomes");
    }
    if (n_events < 1) {
        throw ValidationError("n_events must be at least 1");
    }

    DecisionStatistic stat;
    stat.n_events = n_events;
    stat.w = obs.y.dot(f);
    // Multinomial plug-in: sum_jk y_j y_k (delta_jk f_j - f_j f_k) / N
    // collapses to (sum_j y_j^2 f_j - w^2) / N.
    const double second_moment = (obs.y.array().square() * f.array()).sum();
    stat.variance = std::max(0.0, (second_moment - stat.w * stat.w) /
                                      static_cast<double>(n_events));
    if (stat.variance > kDegenerateVariance) {
        stat.b_sub = 2.0 * std::exp(-stat.w * stat.w / (2.0 * stat.variance));
    } else {
        stat.b_sub = std::abs(stat.w) <= kDegenerateWTol ? 2.0 : 0.0;
    }
    stat.epsilon = std::abs(stat.w);
    return stat;
}

DecisionStatistic decision_statistic(const DecisionObservable& obs,
                                     const FrequencyRecord& record) {
    return decision_statistic(obs, record.f, record.n_events);
}

long long hoeffding_sample_size(double epsilon, double alpha, double sum_y_sq) {
    if (!(epsilon > 0.0)) {
        throw ValidationError("epsilon must be positive");
    }
    if (!(alpha > 0.0) || alpha > 2.0) {
        throw ValidationError("alpha must lie in (0, 2]");
    }
    if (!(sum_y_sq > 0.0)) {
        throw ValidationError("sum_y_sq must be positive");
    }
    const double bound = -2.0 * std::log(alpha / 2.0) * sum_y_sq / (epsilon * epsilon);
    if (!(bound < 9e18)) {
        throw ValidationError("required sample size overflows a 64-bit count");
    }
    const long long n = static_cast<long long>(std::ceil(bound));
    return n < 1 ? 1 : n;
}

ExtractionReport run_psep(const std::vector<CommutingMeasurement>& sets,
                          const std::vector<FrequencyRecord>& data,
                          const PsepOptions& options) {
    if (sets.empty()) {
        throw ValidationError("at least one measurement set is required");
    }
    if (sets.size() != data.size()) {
        throw ShapeError("got " + std::to_string(sets.size()) + " measurement sets but " +
                         std::to_string(data.size()) + " data records");
    }
    const Eigen::Index n_levels = sets.front().n_levels();
    for (std::size_t s = 0; s < sets.size(); ++s) {
        if (sets[s].n_levels() != n_levels) {
            throw ShapeError("measurement set " + std::to_string(s) +
                             " has a different level count");
        }
        if (data[s].n_outcomes() != sets[s].n_outcomes()) {
            throw ShapeError("data record " + std::to_string(s) +
                             " does not match its measurement set");
        }
    }
    if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
        throw ValidationError("alpha must lie in (0, 1)");
    }

    ExtractionReport report;
    report.alpha = options.alpha;
    report.ordering = options.ordering;

    Sector fov = options.fov;
    if (fov.empty()) {
        // Largest leading-level window the outcomes can resolve. The working
        // dimension may not exceed the rank of any set's coefficient matrix.
        Eigen::Index min_rank = n_levels;
        for (const auto& set : sets) {
            min_rank = std::min(min_rank, numerical_rank(set.coefficients));
        }
        fov.resize(static_cast<std::size_t>(min_rank));
        std::iota(fov.begin(), fov.end(), 0);
        if (min_rank < n_levels) {
            report.warnings.push_back(
                "field of view reduced to the first " + std::to_string(min_rank) +
                " of " + std::to_string(n_levels) +
                " levels: limited by the rank of the measured outcomes");
        }
    } else {
        check_levels(fov, n_levels, "fov");
    }
    if (fov.empty()) {
        throw FovError("empty field of view: the measured outcomes resolve no level");
    }

    const int threads = resolve_thread_count(options.n_threads);

    // Averaged rough diagonal estimate; per-set hints are independent, the
    // elementwise mean is reduced in set order.
    std::vector<Vector> hints(sets.size());
    parallel_for(
        sets.size(), [&](std::size_t s) { hints[s] = diagonal_hint(sets[s], data[s]).first; },
        threads);
    report.mean_hint = Vector::Zero(n_levels);
    for (const Vector& hint : hints) {
        report.mean_hint += hint;
    }
    report.mean_hint /= static_cast<double>(sets.size());

    report.sorted_order = options.ordering == LevelOrdering::hint
                              ? sort_by_hint(report.mean_hint, fov)
                              : fov;

    // Grow the candidate subspace one level at a time until the across-set
    // mean of b_sub clears alpha.
    bool accepted = false;
    for (std::size_t k = 1; k <= report.sorted_order.size() && !accepted; ++k) {
        ExtractionStep step;
        step.k = static_cast<int>(k);
        step.subspace.assign(report.sorted_order.begin(),
                             report.sorted_order.begin() + static_cast<std::ptrdiff_t>(k));

        std::vector<double> w_values(sets.size());
        std::vector<double> var_values(sets.size());
        step.b_sub_per_set.resize(sets.size());
        parallel_for(
            sets.size(),
            [&](std::size_t s) {
                try {
                    const DecisionObservable obs = build_decision_observable(
                        sets[s], step.subspace, fov, options.observable_tol);
                    const DecisionStatistic stat = decision_statistic(obs, data[s]);
                    w_values[s] = stat.w;
                    var_values[s] = stat.variance;
                    step.b_sub_per_set[s] = stat.b_sub;
                } catch (const FovError& e) {
                    throw FovError("measurement set " + std::to_string(s) + ", step k=" +
                                   std::to_string(k) + ": " + e.what());
                }
            },
            threads);

        step.mean_b_sub = mean_of(step.b_sub_per_set);
        step.std_b_sub = stddev_of(step.b_sub_per_set, step.mean_b_sub);
        step.mean_w = mean_of(w_values);
        step.mean_variance = mean_of(var_values);
        report.steps.push_back(std::move(step));

        if (report.steps.back().mean_b_sub >= options.alpha) {
            accepted = true;
            report.extracted_sector = report.steps.back().subspace;
        }
    }

    if (accepted) {
        report.status = ExtractionStatus::accepted;
    } else {
        report.status = ExtractionStatus::fov_exhausted;
        report.extracted_sector = report.sorted_order;
    }
    return report;
}

}  // namespace physector
