#include "physector/simulate.hpp"

#include <numeric>
#include <set>
#include <string>

#include "physector/errors.hpp"
#include "physector/rng.hpp"

namespace physector {

namespace {
constexpr double kProbTol = 1e-12;
}

FrequencyRecord sample_frequencies(const ProbabilityVector& p, long long n_events,
                                   std::uint64_t seed) {
    if (n_events < 1) {
        throw ValidationError("n_events must be at least 1");
    }
    const Eigen::Index n = p.size();
    if (n < 1) {
        throw ShapeError("probability vector must not be empty");
    }

    std::vector<double> q(static_cast<std::size_t>(n));
    double total = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double pj = p(j);
        if (!(pj >= -kProbTol) || !std::isfinite(pj)) {
            throw ValidationError("invalid probability " + std::to_string(pj) +
                                  " at outcome " + std::to_string(j));
        }
        q[static_cast<std::size_t>(j)] = pj < 0.0 ? 0.0 : pj;
        total += q[static_cast<std::size_t>(j)];
    }
    if (total > 1.0 + kProbTol) {
        throw ValidationError("probabilities sum to " + std::to_string(total) + " > 1");
    }
    // Mass outside the measured outcomes; sampled below but never reported.
    const double deficit = 1.0 - total > kProbTol ? 1.0 - total : 0.0;

    // suffix[j] = q_j + q_{j+1} + ... so that the last nonzero bin absorbs
    // every remaining event exactly when there is no deficit.
    std::vector<double> suffix(static_cast<std::size_t>(n) + 1, 0.0);
    for (Eigen::Index j = n - 1; j >= 0; --j) {
        suffix[static_cast<std::size_t>(j)] =
            suffix[static_cast<std::size_t>(j) + 1] + q[static_cast<std::size_t>(j)];
    }

    FrequencyRecord record;
    record.n_events = n_events;
    record.seed = static_cast<std::int64_t>(seed);
    record.counts.assign(static_cast<std::size_t>(n), 0);

    std::mt19937_64 rng(seed);
    long long remaining = n_events;
    for (Eigen::Index j = 0; j < n && remaining > 0; ++j) {
        const std::size_t i = static_cast<std::size_t>(j);
        const double rest = suffix[i] + deficit;
        if (q[i] <= 0.0 || rest <= 0.0) {
            continue;
        }
        const double ratio = q[i] / rest;
        if (ratio >= 1.0) {
            record.counts[i] = remaining;
            remaining = 0;
            break;
        }
        std::binomial_distribution<long long> binomial(remaining, ratio);
        record.counts[i] = binomial(rng);
        remaining -= record.counts[i];
    }

    record.f = Vector(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        record.f(j) = static_cast<double>(record.counts[static_cast<std::size_t>(j)]) /
                      static_cast<double>(n_events);
    }
    return record;
}

FrequencyRecord record_from_counts(const std::vector<long long>& counts, long long n_events) {
    if (counts.empty()) {
        throw ValidationError("counts must not be empty");
    }
    long long sum = 0;
    for (std::size_t j = 0; j < counts.size(); ++j) {
        if (counts[j] < 0) {
            throw ValidationError("negative count at outcome " + std::to_string(j));
        }
        sum += counts[j];
    }
    if (n_events == 0) {
        n_events = sum;
    }
    if (n_events < 1) {
        throw ValidationError("n_events must be at least 1");
    }
    if (sum > n_events) {
        throw ValidationError("counts sum to " + std::to_string(sum) + " > n_events " +
                              std::to_string(n_events));
    }

    FrequencyRecord record;
    record.n_events = n_events;
    record.seed = -1;
    record.counts = counts;
    record.f = Vector(static_cast<Eigen::Index>(counts.size()));
    for (std::size_t j = 0; j < counts.size(); ++j) {
        record.f(static_cast<Eigen::Index>(j)) =
            static_cast<double>(counts[j]) / static_cast<double>(n_events);
    }
    return record;
}

FrequencyRecord restrict_record(const FrequencyRecord& record,
                                const std::vector<Eigen::Index>& outcome_indices) {
    if (outcome_indices.empty()) {
        throw ValidationError("outcome subset must not be empty");
    }
    FrequencyRecord out;
    out.n_events = record.n_events;
    out.seed = record.seed;
    out.f = Vector(static_cast<Eigen::Index>(outcome_indices.size()));
    out.counts.reserve(outcome_indices.size());
    std::set<Eigen::Index> seen;
    for (std::size_t i = 0; i < outcome_indices.size(); ++i) {
        const Eigen::Index j = outcome_indices[i];
        if (j < 0 || j >= record.n_outcomes()) {
            throw ValidationError("outcome index " + std::to_string(j) + " out of range");
        }
        if (!seen.insert(j).second) {
            throw ValidationError("duplicate outcome index " + std::to_string(j));
        }
        out.f(static_cast<Eigen::Index>(i)) = record.f(j);
        out.counts.push_back(record.counts[static_cast<std::size_t>(j)]);
    }
    return out;
}

}  // namespace physector
