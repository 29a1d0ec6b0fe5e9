#include "lgcb/experiment.hpp"

#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace lgcb {

namespace {

struct ResolvedAlgorithm {
    AlgorithmVariant variant;
    std::optional<FeedbackGraph> static_graph; // stripped for star variants
    bool directed_world = false;
};

ResolvedAlgorithm resolve_algorithm(const ExperimentConfig& config,
                                    const AlgorithmConfig& algo_config,
                                    const Adversary& adversary, std::uint64_t seed) {
    ResolvedAlgorithm resolved;
    resolved.variant = parse_algorithm_selector(algo_config.selector);
    if (!adversary.per_round_graph()) {
        Prng graph_rng(seed, 0, StreamTag::kGraph);
        InteractionHistory empty;
        FeedbackGraph g = adversary.graph(1, empty, graph_rng);
        resolved.static_graph = resolved.variant.uses_side_observations() ? g : g.without_edges();
        resolved.directed_world = !resolved.static_graph->undirected();
    } else {
        resolved.directed_world =
            resolved.variant.uses_side_observations() && config.graph.directed;
    }
    return resolved;
}

// Per-round alpha upper bound fed into the U schedules. Star variants live
// in an edgeless world whose independence number is K, whatever the true
// graph looks like.
double schedule_alpha(const ExperimentConfig& config, const AlgorithmConfig& algo_config,
                      const ResolvedAlgorithm& resolved) {
    if (!resolved.variant.uses_side_observations())
        return static_cast<double>(config.num_actions);
    AlphaMode mode{algo_config.alpha_exact, algo_config.alpha_fixed.value_or(0.0)};
    if (!mode.exact) return mode.fixed_value;
    if (!resolved.static_graph)
        throw std::invalid_argument(
            "algorithm \"" + algo_config.selector +
            "\": alpha_bounds \"exact\" needs a fixed graph; a per-round random graph requires "
            "a fixed alpha bound");
    return resolve_alpha(*resolved.static_graph, mode);
}

std::unique_ptr<Agent> make_agent(const ExperimentConfig& config,
                                  const AlgorithmConfig& algo_config,
                                  const ResolvedAlgorithm& resolved,
                                  const ContextDistribution& dist) {
    int k = config.num_actions;
    int d = config.dimension;
    const Matrix& sigma_inv = dist.second_moment_inverse();
    double sigma = dist.norm_bound();
    double lambda_min = dist.smallest_eigenvalue();

    if (resolved.variant.implicit_exploration()) {
        if (algo_config.eta || algo_config.gamma)
            throw std::invalid_argument("algorithm \"" + algo_config.selector +
                                        "\": eta/gamma overrides apply only to the "
                                        "uniform-exploration variants");
        AlphaMode mode{algo_config.alpha_exact, algo_config.alpha_fixed.value_or(0.0)};
        if (!resolved.variant.uses_side_observations())
            mode = AlphaMode{true, 0.0}; // edgeless world resolves to alpha = K
        if (!mode.exact && !(mode.fixed_value >= 1.0))
            throw std::invalid_argument("algorithm \"" + algo_config.selector +
                                        "\": fixed alpha bound must be >= 1");
        return std::make_unique<Exp3LgcIXAgent>(k, d, sigma_inv, mode);
    }

    UParams params;
    if (algo_config.eta && algo_config.gamma) {
        params = UParams{*algo_config.eta, *algo_config.gamma, resolved.directed_world};
    } else if (algo_config.eta || algo_config.gamma) {
        throw std::invalid_argument("algorithm \"" + algo_config.selector +
                                    "\": override eta and gamma together");
    } else {
        std::vector<double> alpha{schedule_alpha(config, algo_config, resolved)};
        params = resolved.directed_world
                     ? schedule_u_directed(k, sigma, lambda_min, d, config.horizon, alpha)
                     : schedule_u_undirected(k, sigma, lambda_min, d, config.horizon, alpha);
    }
    return std::make_unique<Exp3LgcUAgent>(k, d, sigma_inv, params, sigma, lambda_min);
}

} // namespace

Trace run_trial(const ExperimentConfig& config, std::size_t algorithm_index, std::uint64_t seed) {
    if (algorithm_index >= config.algorithms.size())
        throw std::out_of_range("run_trial: algorithm index out of range");
    if (config.horizon == 0) return Trace{config_hash(config), seed, {}, {}};
    const AlgorithmConfig& algo_config = config.algorithms[algorithm_index];

    ContextDistribution dist = make_context_distribution(config);
    std::shared_ptr<const Adversary> adversary = make_adversary(config);
    ResolvedAlgorithm resolved = resolve_algorithm(config, algo_config, *adversary, seed);
    std::unique_ptr<Agent> agent = make_agent(config, algo_config, resolved, dist);

    TrialEnvironment env;
    env.adversary = adversary.get();
    env.dist = &dist;
    env.seed = seed;
    env.use_side_observations = resolved.variant.uses_side_observations();
    env.static_graph = std::move(resolved.static_graph);

    Trace trace;
    trace.config_hash = config_hash(config);
    trace.seed = seed;
    trace.records.reserve(static_cast<std::size_t>(config.horizon));
    trace.cumulative_loss.reserve(static_cast<std::size_t>(config.horizon));
    InteractionHistory history;
    double total_loss = 0.0;
    for (std::int64_t t = 1; t <= config.horizon; ++t) {
        RoundRecord record = run_round(*agent, env, t, history);
        total_loss += record.realized_loss;
        trace.cumulative_loss.push_back(total_loss);
        trace.records.push_back(std::move(record));
    }
    return trace;
}

ScheduleInfo describe_schedule(const ExperimentConfig& config, std::size_t algorithm_index,
                               std::uint64_t seed) {
    if (algorithm_index >= config.algorithms.size())
        throw std::out_of_range("describe_schedule: algorithm index out of range");
    const AlgorithmConfig& algo_config = config.algorithms[algorithm_index];
    ContextDistribution dist = make_context_distribution(config);
    std::shared_ptr<const Adversary> adversary = make_adversary(config);
    ResolvedAlgorithm resolved = resolve_algorithm(config, algo_config, *adversary, seed);

    ScheduleInfo info;
    info.selector = algo_config.selector;
    info.implicit_exploration = resolved.variant.implicit_exploration();
    if (info.implicit_exploration) {
        auto [eta, beta] = schedule_ix(1, config.num_actions, config.dimension, 0.0);
        info.eta = eta;
        info.beta = beta;
        return info;
    }
    info.alpha_bound = schedule_alpha(config, algo_config, resolved);
    std::unique_ptr<Agent> agent = make_agent(config, algo_config, resolved, dist);
    const UParams& params = static_cast<const Exp3LgcUAgent&>(*agent).params();
    info.eta = params.eta;
    info.gamma = params.gamma;
    return info;
}

ExperimentResult run_experiment(const ExperimentConfig& config, int threads,
                                const TraceSink& on_trace) {
    if (config.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
    if (config.algorithms.empty())
        throw std::invalid_argument("run_experiment: no algorithms configured");

    BenchmarkPolicy benchmark = build_benchmark(make_adversary(config), config.horizon);

    std::size_t num_algorithms = config.algorithms.size();
    std::vector<std::vector<RegretCurve>> curves(num_algorithms);
    for (auto& per_algo : curves) per_algo.resize(static_cast<std::size_t>(config.trials));

    struct Job {
        std::size_t algorithm;
        int trial;
    };
    std::vector<Job> jobs;
    for (std::size_t a = 0; a < num_algorithms; ++a)
        for (int k = 0; k < config.trials; ++k) jobs.push_back({a, k});

    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));

    std::atomic<std::size_t> next_job{0};
    std::mutex error_mutex;
    std::string first_error;

    auto worker = [&] {
        for (;;) {
            std::size_t j = next_job.fetch_add(1);
            if (j >= jobs.size()) return;
            const Job& job = jobs[j];
            try {
                std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(job.trial);
                Trace trace = run_trial(config, job.algorithm, seed);
                curves[job.algorithm][static_cast<std::size_t>(job.trial)] =
                    regret_curve(trace, benchmark);
                if (on_trace) on_trace(trace, config.algorithms[job.algorithm].selector, job.trial);
            } catch (const std::exception& e) {
                std::lock_guard lock(error_mutex);
                if (first_error.empty())
                    first_error = "algorithm \"" + config.algorithms[job.algorithm].selector +
                                  "\" trial " + std::to_string(job.trial) + ": " + e.what();
                next_job.store(jobs.size()); // stop handing out work
                return;
            }
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    if (!first_error.empty()) throw std::runtime_error(first_error);

    ExperimentResult result;
    result.checkpoints = checkpoint_rounds(config.horizon, config.output.checkpoint_stride);
    for (std::size_t a = 0; a < num_algorithms; ++a)
        result.algorithms.push_back({config.algorithms[a].selector, aggregate(curves[a])});
    return result;
}

} // namespace lgcb
