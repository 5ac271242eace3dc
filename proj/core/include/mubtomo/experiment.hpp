#pragma once

#include "mubtomo/estimate.hpp"
#include "mubtomo/metrics.hpp"
#include "mubtomo/simulate.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mubtomo {

enum class ExperimentKind { Histogram, Ratio };

std::string to_string(ExperimentKind kind);

/// Configuration for the two experiment families. Defaults mirror the
/// reference settings: 18,000 copies for histograms, 30 trials per point and
/// a half-decade N grid from 1e3 to 1e5 for ratio curves, visibility 0.93.
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Ratio;
    std::string state_id = "maximally-mixed";
    std::vector<std::string> schemes = {"SSQST", "MUB"};
    double visibility = 0.93;
    std::vector<std::int64_t> n_total = {1000, 3000, 10000, 30000, 100000};
    int trials_per_point = 30;
    int num_random_states = 3000;
    CountModel model = CountModel::MultinomialExact;
    std::uint64_t master_seed = 0;
    std::string out_path;
    // Compare each reconstruction against the fit of all pooled counts for
    // its scheme instead of the known true state (ratio experiments only).
    bool pooled_baseline = false;
    // Mix the configured state toward I/4 with this weight before simulating.
    double depolarize_weight = 0.0;
    int threads = 0;  // 0 = hardware concurrency
    MleOptions mle;

    void validate() const;
};

struct ExperimentRecord {
    std::string experiment;
    std::string scheme;
    std::string state;
    std::int64_t n_total = 0;
    int trial = 0;
    std::uint64_t seed = 0;  // rng stream id used for this record's counts
    double infidelity = 0.0;
    double log_likelihood = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Summary over one (scheme, state, N) group of records.
struct GroupSummary {
    std::string scheme;
    std::string state;
    std::int64_t n_total = 0;
    SummaryStats stats;
};

/// Per-N SSQST/MUB infidelity ratio. mean_ratio averages the per-trial
/// ratios; ratio_of_means divides the per-scheme mean infidelities.
struct RatioSummary {
    std::int64_t n_total = 0;
    double mean_ratio = 0.0;
    double ratio_se = 0.0;
    double ratio_of_means = 0.0;
    std::size_t trials = 0;
};

struct ExperimentResult {
    std::vector<ExperimentRecord> records;
    std::vector<GroupSummary> groups;
    std::vector<RatioSummary> ratios;
    std::vector<std::pair<std::string, double>> slopes;  // (scheme, power-law slope)
};

/// Infidelity histogram over Haar-random separable and maximally entangled
/// states, reconstructed per state from one simulated acquisition.
ExperimentResult run_histogram(const ExperimentConfig& config);

/// Infidelity-vs-N comparison of the configured schemes on a fixed state,
/// repeated trials per N value.
ExperimentResult run_ratio(const ExperimentConfig& config);

/// Dispatch on config.experiment, then write the CSV and the summary sidecar
/// (<out>.summary.json) when an output path is configured.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Fixed-column CSV: experiment,scheme,state,n_total,trial,seed,infidelity,
/// loglik,iterations,converged. Identical config and master seed reproduce
/// this string byte for byte.
std::string records_to_csv(const std::vector<ExperimentRecord>& records);

std::string summary_to_json(const ExperimentResult& result);

/// Parse a JSON config file; missing keys keep their defaults.
ExperimentConfig config_from_json(const std::string& text);

}  // namespace mubtomo
