#pragma once

#include <cstdint>
#include <vector>

#include "physector/linalg.hpp"
#include "physector/measurement.hpp"

namespace physector {

// Relative frequencies from n_events detection events. f_j = counts_j /
// n_events exactly. Events falling outside the measured outcomes (when
// sum p_j < 1) are sampled but not reported, so f_j stays an unbiased
// estimate of p_j. seed is -1 for records of external origin.
struct FrequencyRecord {
    Vector f;
    long long n_events = 0;
    std::int64_t seed = -1;
    std::vector<long long> counts;

    Eigen::Index n_outcomes() const { return f.size(); }
};

/// Multinomial counts for n_events trials over the outcome probabilities p,
/// plus an implicit deficit bin when sum p < 1. Sampling is O(J) sequential
/// conditional binomials; deterministic given seed. Tiny negative p_j (above
/// -1e-12) are clamped to zero.
FrequencyRecord sample_frequencies(const ProbabilityVector& p, long long n_events,
                                   std::uint64_t seed);

/// Wraps externally obtained counts. n_events = 0 means "sum of counts".
FrequencyRecord record_from_counts(const std::vector<long long>& counts,
                                   long long n_events = 0);

/// Restriction of a record to a subset of its outcomes; n_events is kept, so
/// the retained f_j are unchanged (no renormalization).
FrequencyRecord restrict_record(const FrequencyRecord& record,
                                const std::vector<Eigen::Index>& outcome_indices);

}  // namespace physector
