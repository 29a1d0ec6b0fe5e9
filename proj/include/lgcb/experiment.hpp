#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lgcb/config.hpp"
#include "lgcb/evaluation.hpp"
#include "lgcb/simulator.hpp"

namespace lgcb {

// Builds the per-trial environment and agent for one algorithm entry of the
// config (resolving schedules, alpha bounds, and edge stripping) and plays
// all T rounds. Deterministic in (config, algorithm_index, seed).
Trace run_trial(const ExperimentConfig& config, std::size_t algorithm_index, std::uint64_t seed);

struct AlgorithmResult {
    std::string selector;
    AggregateCurve curve;
};

struct ExperimentResult {
    std::vector<AlgorithmResult> algorithms;
    std::vector<std::int64_t> checkpoints;
};

// Runs every configured algorithm for config.trials trials with seeds
// base_seed + trial index, reduces traces to aggregated regret curves.
// Trials are distributed over `threads` workers (0 = hardware concurrency);
// the reduction is by trial index, so results do not depend on scheduling.
// on_trace, when set, sees every finished trace (progress logging, trace
// dumps); it may be called from worker threads.
using TraceSink = std::function<void(const Trace&, const std::string& selector, int trial)>;

ExperimentResult run_experiment(const ExperimentConfig& config, int threads = 1,
                                const TraceSink& on_trace = {});

// Resolved tuning for one algorithm entry: (eta, gamma) for the
// uniform-exploration variants, (eta_1, beta_1) for implicit exploration.
struct ScheduleInfo {
    std::string selector;
    bool implicit_exploration = false;
    double eta = 0.0;
    double gamma = 0.0; // U variants
    double beta = 0.0;  // IX variants, at t = 1
    double alpha_bound = 0.0;
};

ScheduleInfo describe_schedule(const ExperimentConfig& config, std::size_t algorithm_index,
                               std::uint64_t seed);

} // namespace lgcb
