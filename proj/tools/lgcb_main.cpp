#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lgcb/experiment.hpp"
#include "lgcb/verification.hpp"

namespace fs = std::filesystem;
using namespace lgcb;

namespace {

constexpr const char* kVersion = "lgcb 0.1.0";

struct CommonFlags {
    std::string config_path;
    std::optional<int> trials;
    std::optional<std::int64_t> horizon;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::string format;
    int threads = 0;
    std::string algorithm;
};

// Flag > file > default.
ExperimentConfig load_config(const CommonFlags& flags) {
    ExperimentConfig config = resolve_config(flags.config_path);
    if (flags.trials) config.trials = *flags.trials;
    if (flags.horizon) config.horizon = *flags.horizon;
    if (flags.seed) config.base_seed = *flags.seed;
    if (!flags.format.empty()) config.output.format = flags.format;
    if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (config.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    return config;
}

std::string resolve_out_dir(const CommonFlags& flags, const ExperimentConfig& config) {
    if (!flags.out_dir.empty()) return flags.out_dir;
    if (!config.output.directory.empty()) return config.output.directory;
    if (const char* env = std::getenv("LGCB_OUT_DIR"); env && *env) return env;
    return "results";
}

std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int run_command(const CommonFlags& flags) {
    ExperimentConfig config = load_config(flags);
    fs::path out_dir = resolve_out_dir(flags, config);
    fs::create_directories(out_dir);

    std::string results_name = config.output.format == "jsonl" ? "results.jsonl" : "results.csv";
    fs::path results_path = out_dir / results_name;
    fs::path partial_path = out_dir / (results_name + ".partial");
    fs::path manifest_path = out_dir / "manifest.json";

    std::mutex io_mutex;
    TraceSink sink = [&](const Trace& trace, const std::string& selector, int trial) {
        if (config.output.dump_traces) {
            fs::path trace_path =
                out_dir / ("trace_" + selector + "_trial" + std::to_string(trial) + ".jsonl");
            std::ofstream trace_out(trace_path);
            write_trace_jsonl(trace, trace_out);
        }
        std::lock_guard lock(io_mutex);
        std::cerr << "trial " << trial + 1 << "/" << config.trials << " done: " << selector
                  << " (seed " << trace.seed << ")\n";
    };

    try {
        ExperimentResult result = run_experiment(config, flags.threads, sink);

        std::vector<std::string> names;
        std::vector<AggregateCurve> curves;
        for (const AlgorithmResult& algo : result.algorithms) {
            names.push_back(algo.selector);
            curves.push_back(algo.curve);
        }
        {
            std::ofstream out(partial_path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write " + partial_path.string());
            if (config.output.format == "jsonl")
                write_results_jsonl(out, names, curves, result.checkpoints);
            else
                write_results_csv(out, names, curves, result.checkpoints);
        }
        fs::rename(partial_path, results_path);

        std::ofstream manifest(manifest_path, std::ios::binary);
        manifest << "{\"config_hash\":\"" << hash_hex(config_hash(config)) << "\","
                 << "\"base_seed\":" << config.base_seed << ","
                 << "\"trials\":" << config.trials << ","
                 << "\"horizon\":" << config.horizon << ","
                 << "\"build\":\"" << kVersion << "\","
                 << "\"results\":\"" << results_name << "\",\"algorithms\":[";
        for (std::size_t a = 0; a < names.size(); ++a)
            manifest << (a ? "," : "") << '"' << names[a] << '"';
        manifest << "]}\n";

        std::cout << "wrote " << results_path.string() << " and " << manifest_path.string()
                  << "\n";
        return 0;
    } catch (...) {
        std::error_code ec;
        fs::remove(partial_path, ec); // no stale partial results
        throw;
    }
}

int verify_command() {
    bool ok = verify::run_full_audit(std::cout);
    std::cout << (ok ? "all audits passed\n" : "AUDIT FAILURES above\n");
    return ok ? 0 : 1;
}

int show_schedule_command(const CommonFlags& flags) {
    ExperimentConfig config = load_config(flags);
    bool found = false;
    for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
        if (!flags.algorithm.empty() && config.algorithms[a].selector != flags.algorithm)
            continue;
        found = true;
        ScheduleInfo info = describe_schedule(config, a, config.base_seed);
        std::printf("%s: ", info.selector.c_str());
        if (info.implicit_exploration)
            std::printf("eta_1=%.12g beta_1=%.12g (adaptive)\n", info.eta, info.beta);
        else
            std::printf("eta=%.12g gamma=%.12g (alpha bound %.12g)\n", info.eta, info.gamma,
                        info.alpha_bound);
    }
    if (!found) {
        std::cerr << "algorithm \"" << flags.algorithm << "\" is not in this config\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation benchmark for adversarial linear contextual bandits with "
                 "graph-structured side observations"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonFlags flags;

    CLI::App* run = app.add_subcommand("run", "Run an experiment and write result files");
    run->add_option("--config", flags.config_path, "Config file path or preset name")->required();
    run->add_option("--trials", flags.trials, "Override the number of trials");
    run->add_option("--horizon", flags.horizon, "Override the horizon T");
    run->add_option("--seed", flags.seed, "Override the base seed");
    run->add_option("--out", flags.out_dir, "Output directory (default: config, then $LGCB_OUT_DIR)");
    run->add_option("--format", flags.format, "Results format: csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    run->add_option("--threads", flags.threads, "Worker threads (0 = hardware)");

    CLI::App* verify = app.add_subcommand("verify", "Run the brute-force audit suite");

    CLI::App* show = app.add_subcommand("show-schedule", "Print resolved tuning parameters");
    show->add_option("--config", flags.config_path, "Config file path or preset name")->required();
    show->add_option("--horizon", flags.horizon, "Override the horizon T");
    show->add_option("--trials", flags.trials, "Override the number of trials");
    show->add_option("--algorithm", flags.algorithm, "Restrict to one algorithm selector");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_command(flags);
        if (verify->parsed()) return verify_command();
        if (show->parsed()) return show_schedule_command(flags);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
