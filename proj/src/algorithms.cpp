#include "lgcb/algorithms.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lgcb {

namespace {

// Softmax of -eta * <context, row_i> with max-subtraction.
Vec exponential_weights(const CumulativeEstimate& state, const Vec& context, double eta) {
    if (context.size() != static_cast<std::size_t>(state.dimension()))
        throw std::invalid_argument("policy: context dimension mismatch");
    int k = state.num_actions();
    Vec scores(k);
    double max_score = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
        scores[i] = -eta * dot(context, state.row(i));
        if (!std::isfinite(scores[i]))
            throw std::runtime_error("policy: non-finite exponential-weights score");
        max_score = std::max(max_score, scores[i]);
    }
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        scores[i] = std::exp(scores[i] - max_score);
        total += scores[i];
    }
    for (int i = 0; i < k; ++i) scores[i] /= total;
    return scores;
}

double sum_alpha_bounds(std::int64_t horizon, std::span<const double> alpha_bounds) {
    if (alpha_bounds.empty())
        throw std::invalid_argument("schedule: alpha_bounds must not be empty");
    if (alpha_bounds.size() != 1 && alpha_bounds.size() != static_cast<std::size_t>(horizon))
        throw std::invalid_argument("schedule: alpha_bounds must have 1 or T entries");
    double sum = 0.0;
    for (double a : alpha_bounds) {
        if (!(a >= 1.0)) throw std::invalid_argument("schedule: every alpha_t must be >= 1");
        sum += a;
    }
    if (alpha_bounds.size() == 1) sum *= static_cast<double>(horizon);
    return sum;
}

void check_schedule_inputs(int num_actions, double sigma, double lambda_min, int dimension,
                           std::int64_t horizon) {
    if (num_actions < 1 || dimension < 1 || horizon < 1)
        throw std::invalid_argument("schedule: K, d, T must be positive");
    if (!(sigma > 0.0) || !(lambda_min > 0.0))
        throw std::invalid_argument("schedule: sigma and lambda_min must be positive");
}

} // namespace

PolicyVector policy_u(const CumulativeEstimate& state, const Vec& context, const UParams& params) {
    if (!(params.eta >= 0.0) || !(params.gamma >= 0.0) || params.gamma >= 1.0)
        throw std::invalid_argument("policy_u: need eta >= 0 and gamma in [0,1)");
    Vec p = exponential_weights(state, context, params.eta);
    int k = state.num_actions();
    double mix = params.gamma / k;
    for (int i = 0; i < k; ++i) p[i] = (1.0 - params.gamma) * p[i] + mix;
    return p;
}

PolicyVector policy_ix(const CumulativeEstimate& state, const Vec& context, double eta_t) {
    if (!(eta_t >= 0.0)) throw std::invalid_argument("policy_ix: eta_t must be nonnegative");
    return exponential_weights(state, context, eta_t);
}

UParams schedule_u_undirected(int num_actions, double sigma, double lambda_min, int dimension,
                              std::int64_t horizon, std::span<const double> alpha_bounds) {
    check_schedule_inputs(num_actions, sigma, lambda_min, dimension, horizon);
    double alpha_sum = sum_alpha_bounds(horizon, alpha_bounds);
    double variance_term = 2.0 * num_actions * sigma * sigma * static_cast<double>(horizon) /
                           lambda_min;
    double eta = std::sqrt(std::log(static_cast<double>(num_actions)) /
                           (variance_term + dimension * alpha_sum));
    double gamma = eta * num_actions * sigma * sigma / lambda_min;
    if (gamma >= 1.0) {
        // gamma < 1 once T exceeds log K (K sigma^2 / lambda)^2 / (2 K sigma^2 / lambda + d a_bar).
        double a_bar = alpha_sum / static_cast<double>(horizon);
        double ratio = num_actions * sigma * sigma / lambda_min;
        double t_min = std::log(static_cast<double>(num_actions)) * ratio * ratio /
                       (2.0 * ratio + dimension * a_bar);
        throw std::invalid_argument(
            "schedule_u_undirected: gamma=" + std::to_string(gamma) +
            " >= 1, horizon too short for the coupling; need T > " +
            std::to_string(static_cast<std::int64_t>(std::ceil(t_min))));
    }
    return {eta, gamma, false};
}

UParams schedule_u_directed(int num_actions, double sigma, double lambda_min, int dimension,
                            std::int64_t horizon, std::span<const double> alpha_bounds) {
    check_schedule_inputs(num_actions, sigma, lambda_min, dimension, horizon);
    double alpha_sum = sum_alpha_bounds(horizon, alpha_bounds);
    double variance_term = 2.0 * num_actions * sigma * sigma * static_cast<double>(horizon) /
                           lambda_min;
    double eta = 1.0 / std::sqrt(variance_term + 4.0 * dimension * alpha_sum);
    double gamma = eta * num_actions * sigma * sigma / lambda_min;
    if (!(std::log(1.0 / gamma) >= 1.0))
        throw std::invalid_argument(
            "schedule_u_directed: log(1/gamma)=" + std::to_string(std::log(1.0 / gamma)) +
            " < 1; the precondition that T is large enough is violated");
    return {eta, gamma, true};
}

double q_bound_u_directed(double alpha, int num_actions, double gamma) {
    if (!(gamma > 0.0))
        throw std::invalid_argument("q_bound_u_directed: gamma must be positive");
    if (!(alpha >= 1.0) || alpha > num_actions)
        throw std::invalid_argument("q_bound_u_directed: alpha must be in [1, K]");
    double k = static_cast<double>(num_actions);
    return 4.0 * alpha * std::log(4.0 * k * k / (alpha * gamma));
}

std::pair<double, double> schedule_ix(std::int64_t t, int num_actions, int dimension,
                                      double q_running_sum) {
    if (t < 1) throw std::invalid_argument("schedule_ix: t must be >= 1");
    if (num_actions < 1 || dimension < 1)
        throw std::invalid_argument("schedule_ix: K and d must be positive");
    if (q_running_sum < 0.0)
        throw std::invalid_argument("schedule_ix: q_running_sum must be nonnegative");
    double log_k = std::log(static_cast<double>(num_actions));
    double beta = std::sqrt(log_k / (num_actions + q_running_sum));
    double eta = beta / std::sqrt(static_cast<double>(dimension));
    return {eta, beta};
}

double q_value_ix(double alpha, int num_actions, double beta_t) {
    if (!(beta_t > 0.0)) throw std::invalid_argument("q_value_ix: beta_t must be positive");
    if (!(alpha >= 1.0) || alpha > num_actions)
        throw std::invalid_argument("q_value_ix: alpha must be in [1, K]");
    double k = static_cast<double>(num_actions);
    double bracket = std::ceil(k * k / beta_t) + k;
    return 2.0 * alpha * std::log(1.0 + bracket / alpha) + 2.0;
}

std::string_view AlgorithmVariant::selector() const {
    switch (kind) {
        case AlgorithmKind::kU: return "exp3-lgc-u";
        case AlgorithmKind::kUStar: return "exp3-lgc-u-star";
        case AlgorithmKind::kIX: return "exp3-lgc-ix";
        case AlgorithmKind::kIXStar: return "exp3-lgc-ix-star";
    }
    return "?";
}

AlgorithmVariant parse_algorithm_selector(std::string_view selector) {
    if (selector == "exp3-lgc-u") return {AlgorithmKind::kU};
    if (selector == "exp3-lgc-u-star") return {AlgorithmKind::kUStar};
    if (selector == "exp3-lgc-ix") return {AlgorithmKind::kIX};
    if (selector == "exp3-lgc-ix-star") return {AlgorithmKind::kIXStar};
    throw std::invalid_argument("unknown algorithm selector \"" + std::string(selector) +
                                "\"; known: exp3-lgc-u, exp3-lgc-u-star, exp3-lgc-ix, "
                                "exp3-lgc-ix-star");
}

double resolve_alpha(const FeedbackGraph& graph, const AlphaMode& mode) {
    if (!mode.exact) {
        if (!(mode.fixed_value >= 1.0))
            throw std::invalid_argument("alpha bound must be >= 1");
        return mode.fixed_value;
    }
    if (graph.num_actions() <= 25)
        return static_cast<double>(independence_number_exact(graph));
    return static_cast<double>(independence_number_greedy_bound(graph));
}

int sample_action(const PolicyVector& policy, Prng& rng) {
    double u = rng.next_double();
    double c = 0.0;
    int last_positive = 0;
    for (std::size_t i = 0; i < policy.size(); ++i) {
        c += policy[i];
        if (u < c) return static_cast<int>(i);
        if (policy[i] > 0.0) last_positive = static_cast<int>(i);
    }
    return last_positive; // u landed on accumulated rounding slack
}

// ---------------------------------------------------------------- U agent

Exp3LgcUAgent::Exp3LgcUAgent(int num_actions, int dimension, const Matrix& sigma_inv,
                             UParams params, double sigma, double lambda_min)
    : state_(num_actions, dimension), sigma_inv_(sigma_inv), params_(params) {
    estimate_magnitude_cap_ = params_.gamma > 0.0
                                  ? num_actions * sigma * sigma / (lambda_min * params_.gamma)
                                  : std::numeric_limits<double>::infinity();
}

AgentStep Exp3LgcUAgent::step(const Vec& context, Prng& action_rng) {
    if (awaiting_update_)
        throw std::logic_error("Exp3LgcUAgent: step called twice without an update");
    last_policy_ = policy_u(state_, context, params_);
    last_context_ = context;
    awaiting_update_ = true;
    return {sample_action(last_policy_, action_rng), last_policy_};
}

Vec Exp3LgcUAgent::update(const FeedbackGraph& graph, const ObservationSet& observed,
                          const OracleDraw& oracle) {
    if (!awaiting_update_)
        throw std::logic_error("Exp3LgcUAgent: update called before step");
    Vec q = observation_probabilities(graph, last_policy_);
    Vec projected = matvec(sigma_inv_, oracle.context);
    int k = state_.num_actions();
    for (int i = 0; i < k; ++i) {
        if (!(q[i] > 0.0))
            throw std::runtime_error("Exp3LgcUAgent: q must stay positive under mixing");
        if (!observed.contains(i)) continue;
        double scale = oracle.losses.at(i) / q[i];
        Vec& row = state_.mutable_row(i);
        for (int c = 0; c < state_.dimension(); ++c) row[c] += scale * projected[c];
#ifndef NDEBUG
        // Magnitude cap on |<X_t, theta_hat>| under the gamma coupling.
        double inner = scale * dot(last_context_, projected);
        assert(std::fabs(inner) <= estimate_magnitude_cap_ * (1.0 + 1e-9) + 1e-12);
#endif
    }
    state_.advance_round();
    awaiting_update_ = false;
    return q;
}

// --------------------------------------------------------------- IX agent

Exp3LgcIXAgent::Exp3LgcIXAgent(int num_actions, int dimension, const Matrix& sigma_inv,
                               AlphaMode alpha_mode)
    : state_(num_actions, dimension), sigma_inv_(sigma_inv), alpha_mode_(alpha_mode) {}

std::pair<double, double> Exp3LgcIXAgent::current_rates() const {
    return schedule_ix(state_.round(), state_.num_actions(), state_.dimension(), q_running_sum_);
}

AgentStep Exp3LgcIXAgent::step(const Vec& context, Prng& action_rng) {
    if (awaiting_update_)
        throw std::logic_error("Exp3LgcIXAgent: step called twice without an update");
    auto [eta_t, beta_t] = current_rates();
    last_policy_ = policy_ix(state_, context, eta_t);
    last_beta_ = beta_t;
    awaiting_update_ = true;
    return {sample_action(last_policy_, action_rng), last_policy_};
}

Vec Exp3LgcIXAgent::update(const FeedbackGraph& graph, const ObservationSet& observed,
                           const OracleDraw& oracle) {
    if (!awaiting_update_)
        throw std::logic_error("Exp3LgcIXAgent: update called before step");
    for (const auto& [action, loss] : oracle.losses) {
        if (loss < 0.0)
            throw std::runtime_error(
                "Exp3LgcIXAgent: observed negative loss " + std::to_string(loss) +
                " for action " + std::to_string(action) +
                "; implicit exploration requires nonnegative losses");
    }
    Vec q = observation_probabilities(graph, last_policy_);
    Vec projected = matvec(sigma_inv_, oracle.context);
    int k = state_.num_actions();
    for (int i = 0; i < k; ++i) {
        if (!observed.contains(i)) continue;
        double scale = oracle.losses.at(i) / (q[i] + last_beta_);
        Vec& row = state_.mutable_row(i);
        for (int c = 0; c < state_.dimension(); ++c) row[c] += scale * projected[c];
    }
    q_running_sum_ += q_value_ix(resolve_alpha(graph, alpha_mode_), k, last_beta_);
    state_.advance_round();
    awaiting_update_ = false;
    return q;
}

} // namespace lgcb
