#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "physector/linalg.hpp"
#include "physector/measurement.hpp"
#include "physector/simulate.hpp"

namespace physector {

// Ordered set of basis-level indices spanning a subspace.
using Sector = std::vector<int>;

// Residual / positivity tolerance for decision-observable construction.
constexpr double kObservableTol = 1e-6;

// A Hermitian combination W = sum_j y_j Pi_j whose diagonal vanishes on the
// target subspace and is strictly positive on every other level inside the
// field of view.
struct DecisionObservable {
    Vector y;                // weight per outcome
    Sector target_subspace;
    Sector fov;              // working levels; target_subspace is a subset
    Vector achieved_diag;    // <n|W|n> recomputed from y, one entry per fov level
    double residual_inf = 0.0;
    double sum_y_sq = 0.0;   // enters the Hoeffding exponent
};

// w estimates <W> from data; b_sub = 2 exp(-w^2 / (2 variance)) is the
// data-driven reliability index, epsilon = |w| the truncation-error scale.
struct DecisionStatistic {
    double w = 0.0;
    double variance = 0.0;
    double b_sub = 0.0;
    double epsilon = 0.0;
    long long n_events = 0;
};

struct ExtractionStep {
    int k = 0;  // subspace size at this iteration
    Sector subspace;
    double mean_b_sub = 0.0;
    double std_b_sub = 0.0;
    double mean_w = 0.0;
    double mean_variance = 0.0;
    std::vector<double> b_sub_per_set;  // kept for diagnostics
};

enum class ExtractionStatus { accepted, fov_exhausted };

enum class LevelOrdering { hint, natural };

struct ExtractionReport {
    Sector sorted_order;   // fov levels in the order they were grown
    Vector mean_hint;      // per-set C^- f averaged over sets, all levels
    std::vector<ExtractionStep> steps;
    double alpha = 0.0;
    Sector extracted_sector;
    ExtractionStatus status = ExtractionStatus::fov_exhausted;
    LevelOrdering ordering = LevelOrdering::hint;
    std::vector<std::string> warnings;

    int d_phys() const { return static_cast<int>(extracted_sector.size()); }
};

struct PsepOptions {
    double alpha = 0.05;
    Sector fov;  // empty = all levels, shrunk to the rank of the outcomes
    LevelOrdering ordering = LevelOrdering::hint;
    double observable_tol = kObservableTol;
    int n_threads = 0;  // 0 = auto, capped by PHYSECTOR_THREADS
};

/// Rough estimate C^- f of the state diagonal (may be negative; used only
/// for ordering). Returns the estimate and the level indices sorted by
/// descending value, ties broken by ascending level index.
std::pair<Vector, Sector> diagonal_hint(const CommutingMeasurement& m, const Vector& f);
std::pair<Vector, Sector> diagonal_hint(const CommutingMeasurement& m,
                                        const FrequencyRecord& record);

/// Solves sum_j y_j c(j, n) = t_n over the fov levels for the minimum-norm y,
/// with targets t_n = 0 on `sub` and 1 elsewhere. Throws FovError when the
/// system is not representable (residual above tol) or when positivity fails
/// on a level outside `sub`.
DecisionObservable build_decision_observable(const CommutingMeasurement& m, const Sector& sub,
                                             const Sector& fov, double tol = kObservableTol);

/// w = sum_j y_j f_j with the plug-in multinomial variance estimate
/// (sum_j y_j^2 f_j - w^2) / N and b_sub = 2 exp(-w^2 / (2 variance)).
/// Zero variance is conclusive: b_sub = 2 when w vanishes, 0 otherwise.
DecisionStatistic decision_statistic(const DecisionObservable& obs, const Vector& f,
                                     long long n_events);
DecisionStatistic decision_statistic(const DecisionObservable& obs,
                                     const FrequencyRecord& record);

/// Smallest N with alpha-significant suppression of statistical fluctuation
/// at truncation-error scale epsilon: N >= -2 ln(alpha/2) sum_y_sq / eps^2.
long long hoeffding_sample_size(double epsilon, double alpha, double sum_y_sq);

/// The full iterative extraction over one or more measurement sets with
/// matching data. Levels are ordered by the averaged diagonal hint (or kept
/// in natural order), then the tested subspace grows one level at a time
/// until the across-set mean of b_sub reaches alpha.
ExtractionReport run_psep(const std::vector<CommutingMeasurement>& sets,
                          const std::vector<FrequencyRecord>& data,
                          const PsepOptions& options);

}  // namespace physector
