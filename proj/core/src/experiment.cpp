#include "mubtomo/experiment.hpp"

#include "mubtomo/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace mubtomo {

namespace {

using nlohmann::json;

// Stream-id namespaces derived from one master seed: states are keyed by a
// state index shared across schemes, counts by the flat record index.
constexpr std::uint64_t kStateStreamBase = std::uint64_t{1} << 32;
constexpr std::uint64_t kCountsStreamBase = std::uint64_t{2} << 32;

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    unsigned n = threads > 0 ? static_cast<unsigned>(threads)
                             : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, count));
    if (n <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) {
        pool.emplace_back(worker);
    }
    for (auto& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

std::vector<MeasurementScheme> build_schemes(const ExperimentConfig& config) {
    std::vector<MeasurementScheme> schemes;
    schemes.reserve(config.schemes.size());
    for (const auto& name : config.schemes) {
        schemes.push_back(scheme_by_name(name, config.visibility));
    }
    return schemes;
}

DensityMatrix resolve_state(const ExperimentConfig& config, const std::string& id,
                            std::uint64_t state_index) {
    RngStream rng(config.master_seed, kStateStreamBase + state_index);
    DensityMatrix state = make_named_state(id, rng);
    if (config.depolarize_weight > 0.0) {
        state = depolarize(state, config.depolarize_weight);
    }
    return state;
}

GroupSummary summarize_group(std::string scheme, std::string state, std::int64_t n_total,
                             const std::vector<double>& samples) {
    return GroupSummary{std::move(scheme), std::move(state), n_total, summarize(samples)};
}

void append_csv_row(std::string& out, const ExperimentRecord& r) {
    char buffer[192];
    std::snprintf(buffer, sizeof(buffer), ",%lld,%d,%llu,%.17g,%.17g,%d,%d\n",
                  static_cast<long long>(r.n_total), r.trial,
                  static_cast<unsigned long long>(r.seed), r.infidelity, r.log_likelihood,
                  r.iterations, r.converged ? 1 : 0);
    out += r.experiment;
    out += ',';
    out += r.scheme;
    out += ',';
    out += r.state;
    out += buffer;
}

json stats_to_json(const SummaryStats& stats) {
    return json{{"median", stats.median}, {"mean", stats.mean},     {"std", stats.std},
                {"median_se", stats.median_se}, {"n", stats.n}};
}

void write_outputs(const ExperimentConfig& config, const ExperimentResult& result) {
    if (config.out_path.empty()) {
        return;
    }
    write_text_file(config.out_path, records_to_csv(result.records));
    write_text_file(config.out_path + ".summary.json", summary_to_json(result));
}

}  // namespace

std::string to_string(ExperimentKind kind) {
    return kind == ExperimentKind::Histogram ? "histogram" : "ratio";
}

void ExperimentConfig::validate() const {
    if (!(visibility > 0.0) || visibility > 1.0) {
        throw std::invalid_argument("config: visibility must be in (0, 1]");
    }
    if (trials_per_point < 1) {
        throw std::invalid_argument("config: trials-per-point must be >= 1");
    }
    if (num_random_states < 1) {
        throw std::invalid_argument("config: num-random-states must be >= 1");
    }
    if (n_total.empty()) {
        throw std::invalid_argument("config: need at least one N value");
    }
    for (std::int64_t n : n_total) {
        if (n <= 0) {
            throw std::invalid_argument("config: all N values must be > 0");
        }
    }
    if (schemes.empty()) {
        throw std::invalid_argument("config: need at least one scheme");
    }
    for (const auto& name : schemes) {
        scheme_by_name(name, visibility);  // throws on unknown name
    }
    if (depolarize_weight < 0.0 || depolarize_weight > 1.0) {
        throw std::invalid_argument("config: depolarize weight must be in [0, 1]");
    }
    if (experiment == ExperimentKind::Ratio) {
        RngStream probe(master_seed, 0);
        make_named_state(state_id, probe);  // throws on unknown identifier
    }
    if (pooled_baseline && experiment != ExperimentKind::Ratio) {
        throw std::invalid_argument("config: pooled baseline applies to ratio experiments only");
    }
}

ExperimentResult run_histogram(const ExperimentConfig& config) {
    config.validate();
    if (config.experiment != ExperimentKind::Histogram) {
        throw std::invalid_argument("run_histogram: config.experiment must be histogram");
    }
    const std::vector<std::string> classes = {"haar-separable", "haar-entangled"};
    const auto schemes = build_schemes(config);
    const std::size_t num_states = static_cast<std::size_t>(config.num_random_states);
    const std::int64_t n_total = config.n_total.front();
    const std::size_t total_records = classes.size() * num_states * schemes.size();

    ExperimentResult result;
    result.records.resize(total_records);

    parallel_for(total_records, config.threads, [&](std::size_t idx) {
        const std::size_t per_class = num_states * schemes.size();
        const std::size_t class_idx = idx / per_class;
        const std::size_t state_idx = (idx % per_class) / schemes.size();
        const std::size_t scheme_idx = idx % schemes.size();

        const std::uint64_t state_index =
            static_cast<std::uint64_t>(class_idx * num_states + state_idx);
        const DensityMatrix truth = resolve_state(config, classes[class_idx], state_index);

        const std::uint64_t counts_stream = kCountsStreamBase + idx;
        RngStream counts_rng(config.master_seed, counts_stream);
        const CountData counts =
            sample_counts(truth, schemes[scheme_idx], n_total, config.model, counts_rng);
        const ReconstructionResult recon = mle_reconstruct(counts, schemes[scheme_idx], config.mle);

        ExperimentRecord& record = result.records[idx];
        record.experiment = "histogram";
        record.scheme = schemes[scheme_idx].name;
        record.state = classes[class_idx];
        record.n_total = n_total;
        record.trial = static_cast<int>(state_idx);
        record.seed = counts_stream;
        record.infidelity = infidelity(truth, recon.rho_hat);
        record.log_likelihood = recon.log_likelihood;
        record.iterations = recon.iterations;
        record.converged = recon.converged;
    });

    for (const auto& scheme : schemes) {
        for (const auto& cls : classes) {
            std::vector<double> samples;
            samples.reserve(num_states);
            for (const auto& record : result.records) {
                if (record.scheme == scheme.name && record.state == cls) {
                    samples.push_back(record.infidelity);
                }
            }
            result.groups.push_back(summarize_group(scheme.name, cls, n_total, samples));
        }
    }
    write_outputs(config, result);
    return result;
}

ExperimentResult run_ratio(const ExperimentConfig& config) {
    config.validate();
    if (config.experiment != ExperimentKind::Ratio) {
        throw std::invalid_argument("run_ratio: config.experiment must be ratio");
    }
    const auto schemes = build_schemes(config);
    const std::size_t num_n = config.n_total.size();
    const std::size_t trials = static_cast<std::size_t>(config.trials_per_point);
    const std::size_t total_records = num_n * trials * schemes.size();

    ExperimentResult result;
    result.records.resize(total_records);

    // Pass 1 (pooled mode only): accumulate every acquisition per scheme and
    // fit the baseline each record is compared against.
    std::vector<DensityMatrix> baselines;
    if (config.pooled_baseline) {
        for (std::size_t s = 0; s < schemes.size(); ++s) {
            CountData pooled;
            bool first = true;
            for (std::size_t idx = s; idx < total_records; idx += schemes.size()) {
                const std::size_t point = idx / schemes.size();
                const std::size_t n_idx = point / trials;
                const std::uint64_t state_index = static_cast<std::uint64_t>(point);
                const DensityMatrix truth =
                    resolve_state(config, config.state_id, state_index);
                RngStream counts_rng(config.master_seed, kCountsStreamBase + idx);
                CountData counts = sample_counts(truth, schemes[s], config.n_total[n_idx],
                                               config.model, counts_rng);
                if (first) {
                    pooled = std::move(counts);
                    first = false;
                } else {
                    for (std::size_t b = 0; b < pooled.counts.size(); ++b) {
                        for (std::size_t g = 0; g < pooled.counts[b].size(); ++g) {
                            pooled.counts[b][g] += counts.counts[b][g];
                        }
                    }
                    pooled.n_total += counts.n_total;
                }
            }
            baselines.push_back(mle_reconstruct(pooled, schemes[s], config.mle).rho_hat);
        }
    }

    parallel_for(total_records, config.threads, [&](std::size_t idx) {
        const std::size_t scheme_idx = idx % schemes.size();
        const std::size_t point = idx / schemes.size();
        const std::size_t trial = point % trials;
        const std::size_t n_idx = point / trials;
        const std::int64_t n_total = config.n_total[n_idx];

        const std::uint64_t state_index = static_cast<std::uint64_t>(point);
        const DensityMatrix truth = resolve_state(config, config.state_id, state_index);

        const std::uint64_t counts_stream = kCountsStreamBase + idx;
        RngStream counts_rng(config.master_seed, counts_stream);
        const CountData counts =
            sample_counts(truth, schemes[scheme_idx], n_total, config.model, counts_rng);
        const ReconstructionResult recon = mle_reconstruct(counts, schemes[scheme_idx], config.mle);

        const DensityMatrix& reference =
            config.pooled_baseline ? baselines[scheme_idx] : truth;

        ExperimentRecord& record = result.records[idx];
        record.experiment = "ratio";
        record.scheme = schemes[scheme_idx].name;
        record.state = config.state_id;
        record.n_total = n_total;
        record.trial = static_cast<int>(trial);
        record.seed = counts_stream;
        record.infidelity = infidelity(reference, recon.rho_hat);
        record.log_likelihood = recon.log_likelihood;
        record.iterations = recon.iterations;
        record.converged = recon.converged;
    });

    // Per-(scheme, N) summaries.
    std::vector<std::vector<double>> scheme_means(schemes.size());
    for (std::size_t s = 0; s < schemes.size(); ++s) {
        for (std::size_t n_idx = 0; n_idx < num_n; ++n_idx) {
            std::vector<double> samples;
            samples.reserve(trials);
            for (std::size_t t = 0; t < trials; ++t) {
                samples.push_back(
                    result.records[(n_idx * trials + t) * schemes.size() + s].infidelity);
            }
            result.groups.push_back(summarize_group(schemes[s].name, config.state_id,
                                                    config.n_total[n_idx], samples));
            scheme_means[s].push_back(result.groups.back().stats.mean);
        }
    }

    // SSQST/MUB ratio per N, averaged over the per-trial ratios.
    std::ptrdiff_t ssqst_idx = -1, mub_idx = -1;
    for (std::size_t s = 0; s < schemes.size(); ++s) {
        if (schemes[s].name == "SSQST") {
            ssqst_idx = static_cast<std::ptrdiff_t>(s);
        }
        if (schemes[s].name == "MUB") {
            mub_idx = static_cast<std::ptrdiff_t>(s);
        }
    }
    if (ssqst_idx >= 0 && mub_idx >= 0) {
        for (std::size_t n_idx = 0; n_idx < num_n; ++n_idx) {
            std::vector<double> ratios;
            ratios.reserve(trials);
            for (std::size_t t = 0; t < trials; ++t) {
                const std::size_t base = (n_idx * trials + t) * schemes.size();
                const double numer =
                    result.records[base + static_cast<std::size_t>(ssqst_idx)].infidelity;
                const double denom =
                    result.records[base + static_cast<std::size_t>(mub_idx)].infidelity;
                if (denom > 0.0) {
                    ratios.push_back(numer / denom);
                }
            }
            RatioSummary ratio;
            ratio.n_total = config.n_total[n_idx];
            ratio.trials = ratios.size();
            if (!ratios.empty()) {
                const SummaryStats stats = summarize(ratios);
                ratio.mean_ratio = stats.mean;
                ratio.ratio_se = ratios.size() > 1
                                     ? stats.std / std::sqrt(static_cast<double>(ratios.size()))
                                     : 0.0;
            }
            const double mub_mean =
                scheme_means[static_cast<std::size_t>(mub_idx)][n_idx];
            ratio.ratio_of_means =
                mub_mean > 0.0
                    ? scheme_means[static_cast<std::size_t>(ssqst_idx)][n_idx] / mub_mean
                    : 0.0;
            result.ratios.push_back(ratio);
        }
    }

    // Power-law slope per scheme over the N grid.
    if (num_n >= 2) {
        for (std::size_t s = 0; s < schemes.size(); ++s) {
            std::vector<std::pair<double, double>> points;
            bool usable = true;
            for (std::size_t n_idx = 0; n_idx < num_n; ++n_idx) {
                if (scheme_means[s][n_idx] <= 0.0) {
                    usable = false;
                    break;
                }
                points.emplace_back(static_cast<double>(config.n_total[n_idx]),
                                    scheme_means[s][n_idx]);
            }
            if (usable) {
                result.slopes.emplace_back(schemes[s].name, fit_power_law(points));
            }
        }
    }
    write_outputs(config, result);
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    return config.experiment == ExperimentKind::Histogram ? run_histogram(config)
                                                          : run_ratio(config);
}

std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
    std::string out = "experiment,scheme,state,n_total,trial,seed,infidelity,loglik,"
                      "iterations,converged\n";
    for (const auto& record : records) {
        append_csv_row(out, record);
    }
    return out;
}

std::string summary_to_json(const ExperimentResult& result) {
    json j;
    json groups = json::array();
    for (const auto& group : result.groups) {
        json g;
        g["scheme"] = group.scheme;
        g["state"] = group.state;
        g["n_total"] = group.n_total;
        g["infidelity"] = stats_to_json(group.stats);
        groups.push_back(std::move(g));
    }
    j["groups"] = std::move(groups);
    if (!result.ratios.empty()) {
        json ratios = json::array();
        for (const auto& ratio : result.ratios) {
            ratios.push_back(json{{"n_total", ratio.n_total},
                                  {"mean_ratio", ratio.mean_ratio},
                                  {"ratio_se", ratio.ratio_se},
                                  {"ratio_of_means", ratio.ratio_of_means},
                                  {"trials", ratio.trials}});
        }
        j["ssqst_over_mub"] = std::move(ratios);
    }
    if (!result.slopes.empty()) {
        json slopes = json::object();
        for (const auto& [scheme, slope] : result.slopes) {
            slopes[scheme] = slope;
        }
        j["power_law_slopes"] = std::move(slopes);
    }
    return j.dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("config: malformed JSON: ") + e.what());
    }
    ExperimentConfig config;
    try {
        if (j.contains("experiment")) {
            const auto kind = j["experiment"].get<std::string>();
            if (kind == "histogram") {
                config.experiment = ExperimentKind::Histogram;
                config.n_total = {18000};
                config.schemes = {"SSQST"};
            } else if (kind == "ratio") {
                config.experiment = ExperimentKind::Ratio;
            } else {
                throw std::runtime_error("config: unknown experiment '" + kind + "'");
            }
        }
        config.state_id = j.value("state", config.state_id);
        if (j.contains("schemes")) {
            config.schemes = j["schemes"].get<std::vector<std::string>>();
        }
        config.visibility = j.value("visibility", config.visibility);
        if (j.contains("n_total")) {
            config.n_total = j["n_total"].get<std::vector<std::int64_t>>();
        }
        config.trials_per_point = j.value("trials_per_point", config.trials_per_point);
        config.num_random_states = j.value("num_random_states", config.num_random_states);
        if (j.contains("model")) {
            config.model = count_model_from_string(j["model"].get<std::string>());
        }
        config.master_seed = j.value("seed", config.master_seed);
        config.out_path = j.value("out", config.out_path);
        config.pooled_baseline = j.value("pooled_baseline", config.pooled_baseline);
        config.depolarize_weight = j.value("depolarize", config.depolarize_weight);
        config.threads = j.value("threads", config.threads);
        if (j.contains("mle")) {
            const json& m = j["mle"];
            config.mle.tolerance = m.value("tolerance", config.mle.tolerance);
            config.mle.max_iterations = m.value("max_iterations", config.mle.max_iterations);
            config.mle.dilution = m.value("dilution", config.mle.dilution);
        }
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("config: bad field: ") + e.what());
    }
    return config;
}

}  // namespace mubtomo
