// Command-line harness for two-qubit polarization tomography simulations:
// inspect and export measurement schemes, simulate count data, reconstruct
// density matrices, and run the histogram / ratio experiment families.

#include <CLI11.hpp>

#include <mubtomo/experiment.hpp>
#include <mubtomo/io.hpp>

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

namespace {

using namespace mubtomo;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct BasesArgs {
    std::string scheme;
    double visibility = 1.0;
    std::string out_path;
};

struct SimulateArgs {
    std::string state_id;
    std::string scheme;
    double visibility = 1.0;
    std::int64_t n_total = 18000;
    std::string model = "multinomial-exact";
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    double depolarize_weight = 0.0;
    std::string out_path;
};

struct ReconstructArgs {
    std::string counts_path;
    std::string method = "mle";
    std::string out_path;
    bool strict = false;
    double tolerance = MleOptions{}.tolerance;
    int max_iterations = MleOptions{}.max_iterations;
    double dilution = MleOptions{}.dilution;
};

struct ExperimentArgs {
    std::string config_path;
    std::string state_id;
    std::vector<std::string> schemes;
    double visibility = 0.0;
    std::vector<std::int64_t> n_total;
    int trials = 0;
    int states = 0;
    std::string model;
    std::uint64_t seed = 0;
    std::string out_path;
    double depolarize_weight = 0.0;
    int threads = 0;
    bool pooled_baseline = false;
    bool strict = false;
};

int run_bases_check(const BasesArgs& args) {
    const auto scheme = scheme_by_name(args.scheme, args.visibility);
    const auto report = certify_unbiased(scheme);
    const bool complete = certify_complete(scheme);
    std::printf("scheme %s: %zu bases, %zu elements, visibility %.4g\n", scheme.name.c_str(),
                scheme.bases.size(), scheme.total_elements(), scheme.visibility);
    std::printf("cross-basis element pairs: %zu\n", report.pair_count);
    std::printf("overlap deviation from 1/%lld: min %.3e, max %.3e\n",
                static_cast<long long>(scheme.dim), report.min_deviation, report.max_deviation);
    std::printf("distinct overlap values:");
    for (double v : report.overlap_values) {
        std::printf(" %.6g", v);
    }
    std::printf("\ninformationally complete: %s\n", complete ? "yes" : "no");
    return kExitOk;
}

int run_bases_export(const BasesArgs& args) {
    const auto scheme = scheme_by_name(args.scheme, args.visibility);
    save_scheme(args.out_path, scheme);
    std::printf("wrote %s\n", args.out_path.c_str());
    return kExitOk;
}

int run_simulate(const SimulateArgs& args) {
    const auto scheme = scheme_by_name(args.scheme, args.visibility);
    RngStream state_rng(args.seed, args.stream + (std::uint64_t{1} << 62));
    DensityMatrix state = make_named_state(args.state_id, state_rng);
    if (args.depolarize_weight > 0.0) {
        state = depolarize(state, args.depolarize_weight);
    }
    RngStream rng(args.seed, args.stream);
    const auto counts =
        sample_counts(state, scheme, args.n_total, count_model_from_string(args.model), rng);
    save_count_data(args.out_path, counts, &scheme);
    std::printf("wrote %s (%lld counts over %zu bases)\n", args.out_path.c_str(),
                static_cast<long long>(counts.observed_total()), counts.counts.size());
    return kExitOk;
}

int run_reconstruct(const ReconstructArgs& args) {
    const CountData counts = load_count_data(args.counts_path);
    const auto scheme = scheme_by_name(counts.scheme_name, counts.visibility);

    ReconstructionResult result = [&] {
        if (args.method == "mle") {
            MleOptions opts;
            opts.tolerance = args.tolerance;
            opts.max_iterations = args.max_iterations;
            opts.dilution = args.dilution;
            return mle_reconstruct(counts, scheme, opts);
        }
        if (args.method == "linear" || args.method == "linear-inversion") {
            const auto inversion = linear_inversion(counts, scheme);
            return ReconstructionResult{inversion.physical,
                                        log_likelihood(inversion.physical, counts, scheme), 0,
                                        true, ReconstructionMethod::LinearInversion, {}};
        }
        throw CLI::ValidationError("--method", "expected mle or linear");
    }();

    save_reconstruction(args.out_path, result);
    std::printf("method=%s converged=%d iterations=%d loglik=%.12g\n",
                args.method.c_str(), result.converged ? 1 : 0, result.iterations,
                result.log_likelihood);
    std::printf("wrote %s\n", args.out_path.c_str());
    if (args.strict && !result.converged) {
        std::fprintf(stderr, "error: reconstruction did not converge\n");
        return kExitNumerical;
    }
    return kExitOk;
}

ExperimentConfig assemble_config(const ExperimentArgs& args, const CLI::App* cmd,
                                 ExperimentKind kind) {
    ExperimentConfig config;
    if (!args.config_path.empty()) {
        config = config_from_json(read_text_file(args.config_path));
    } else if (kind == ExperimentKind::Histogram) {
        config.n_total = {18000};
        config.schemes = {"SSQST"};
    }
    config.experiment = kind;
    const auto given = [cmd](const std::string& flag) { return cmd->count(flag) > 0; };
    if (given("--state")) config.state_id = args.state_id;
    if (given("--scheme")) config.schemes = args.schemes;
    if (given("--visibility")) config.visibility = args.visibility;
    if (given("--n")) config.n_total = args.n_total;
    if (given("--trials")) config.trials_per_point = args.trials;
    if (given("--states")) config.num_random_states = args.states;
    if (given("--model")) config.model = count_model_from_string(args.model);
    if (given("--seed")) config.master_seed = args.seed;
    if (given("--out")) config.out_path = args.out_path;
    if (given("--depolarize")) config.depolarize_weight = args.depolarize_weight;
    if (given("--threads")) config.threads = args.threads;
    if (args.pooled_baseline) config.pooled_baseline = true;
    return config;
}

int run_experiment_cmd(const ExperimentArgs& args, const CLI::App* cmd, ExperimentKind kind) {
    const ExperimentConfig config = assemble_config(args, cmd, kind);
    config.validate();
    const ExperimentResult result = run_experiment(config);

    std::printf("%s: %zu records", to_string(kind).c_str(), result.records.size());
    if (!config.out_path.empty()) {
        std::printf(" -> %s (+ .summary.json)", config.out_path.c_str());
    }
    std::printf("\n");
    for (const auto& group : result.groups) {
        std::printf("  %s %s N=%lld: median %.4e, mean %.4e (n=%zu)\n", group.scheme.c_str(),
                    group.state.c_str(), static_cast<long long>(group.n_total),
                    group.stats.median, group.stats.mean, group.stats.n);
    }
    for (const auto& ratio : result.ratios) {
        std::printf("  SSQST/MUB N=%lld: mean ratio %.4f +- %.4f (ratio of means %.4f)\n",
                    static_cast<long long>(ratio.n_total), ratio.mean_ratio, ratio.ratio_se,
                    ratio.ratio_of_means);
    }
    for (const auto& [scheme, slope] : result.slopes) {
        std::printf("  %s power-law slope: %.4f\n", scheme.c_str(), slope);
    }
    if (args.strict) {
        for (const auto& record : result.records) {
            if (!record.converged) {
                std::fprintf(stderr, "error: record %s/%s N=%lld trial %d did not converge\n",
                             record.scheme.c_str(), record.state.c_str(),
                             static_cast<long long>(record.n_total), record.trial);
                return kExitNumerical;
            }
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-qubit polarization tomography simulator: mutually unbiased bases vs "
                 "standard separable tomography"};
    app.require_subcommand(1);

    // bases check|export
    auto* bases_cmd = app.add_subcommand("bases", "Inspect or export measurement schemes");
    bases_cmd->require_subcommand(1);
    BasesArgs bases_args;
    auto* check_cmd = bases_cmd->add_subcommand("check", "Print unbiasedness and completeness");
    check_cmd->add_option("--scheme", bases_args.scheme, "mub or ssqst")->required();
    check_cmd->add_option("--visibility", bases_args.visibility, "two-photon visibility (0,1]");
    auto* export_cmd = bases_cmd->add_subcommand("export", "Write the scheme operators as JSON");
    export_cmd->add_option("--scheme", bases_args.scheme, "mub or ssqst")->required();
    export_cmd->add_option("--visibility", bases_args.visibility, "two-photon visibility (0,1]");
    export_cmd->add_option("--out", bases_args.out_path, "output path")->required();

    // simulate
    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "Sample count data for a state");
    sim_cmd->add_option("--state", sim_args.state_id, "named state identifier")->required();
    sim_cmd->add_option("--scheme", sim_args.scheme, "mub or ssqst")->required();
    sim_cmd->add_option("--n", sim_args.n_total, "total count budget")->required();
    sim_cmd->add_option("--visibility", sim_args.visibility, "two-photon visibility (0,1]");
    sim_cmd->add_option("--model", sim_args.model, "multinomial or poisson");
    sim_cmd->add_option("--seed", sim_args.seed, "master seed");
    sim_cmd->add_option("--stream", sim_args.stream, "stream id");
    sim_cmd->add_option("--depolarize", sim_args.depolarize_weight,
                        "mix the state toward I/4 with this weight");
    sim_cmd->add_option("--out", sim_args.out_path, "output counts file")->required();

    // reconstruct
    ReconstructArgs rec_args;
    auto* rec_cmd = app.add_subcommand("reconstruct", "Fit a density matrix to counts");
    rec_cmd->add_option("--counts", rec_args.counts_path, "counts JSON file")->required();
    rec_cmd->add_option("--method", rec_args.method, "mle or linear");
    rec_cmd->add_option("--out", rec_args.out_path, "output reconstruction file")->required();
    rec_cmd->add_option("--tolerance", rec_args.tolerance, "MLE log-likelihood tolerance");
    rec_cmd->add_option("--max-iterations", rec_args.max_iterations, "MLE iteration cap");
    rec_cmd->add_option("--dilution", rec_args.dilution, "MLE dilution in (0,1]");
    rec_cmd->add_flag("--strict", rec_args.strict, "exit 2 if the fit did not converge");

    // experiment histogram|ratio
    auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment family");
    exp_cmd->require_subcommand(1);
    ExperimentArgs exp_args;
    auto add_experiment_options = [&](CLI::App* cmd) {
        cmd->add_option("--config", exp_args.config_path, "JSON config file");
        cmd->add_option("--state", exp_args.state_id, "named state identifier");
        cmd->add_option("--scheme", exp_args.schemes, "scheme (repeatable): mub, ssqst");
        cmd->add_option("--visibility", exp_args.visibility, "two-photon visibility (0,1]");
        cmd->add_option("--n", exp_args.n_total, "total count budgets (list)");
        cmd->add_option("--trials", exp_args.trials, "trials per point");
        cmd->add_option("--states", exp_args.states, "random states per class");
        cmd->add_option("--model", exp_args.model, "multinomial or poisson");
        cmd->add_option("--seed", exp_args.seed, "master seed");
        cmd->add_option("--out", exp_args.out_path, "CSV output path");
        cmd->add_option("--depolarize", exp_args.depolarize_weight, "mix the state toward I/4");
        cmd->add_option("--threads", exp_args.threads, "worker threads (0 = hardware)");
        cmd->add_flag("--pooled-baseline", exp_args.pooled_baseline,
                      "compare against the pooled-dataset fit instead of the true state");
        cmd->add_flag("--strict", exp_args.strict, "exit 2 on any non-converged record");
    };
    auto* hist_cmd = exp_cmd->add_subcommand(
        "histogram", "Infidelity histogram over Haar-random states");
    add_experiment_options(hist_cmd);
    auto* ratio_cmd = exp_cmd->add_subcommand(
        "ratio", "Scheme comparison vs total counts on a fixed state");
    add_experiment_options(ratio_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (check_cmd->parsed()) {
            return run_bases_check(bases_args);
        }
        if (export_cmd->parsed()) {
            return run_bases_export(bases_args);
        }
        if (sim_cmd->parsed()) {
            return run_simulate(sim_args);
        }
        if (rec_cmd->parsed()) {
            return run_reconstruct(rec_args);
        }
        if (hist_cmd->parsed()) {
            return run_experiment_cmd(exp_args, hist_cmd, ExperimentKind::Histogram);
        }
        if (ratio_cmd->parsed()) {
            return run_experiment_cmd(exp_args, ratio_cmd, ExperimentKind::Ratio);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
