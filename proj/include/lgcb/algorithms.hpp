#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "lgcb/adversary.hpp"
#include "lgcb/estimators.hpp"
#include "lgcb/graph.hpp"
#include "lgcb/linalg.hpp"
#include "lgcb/rng.hpp"

namespace lgcb {

using PolicyVector = Vec;

// Resolved parameters for the uniform-exploration algorithm. When produced
// by a schedule, gamma = eta * K * sigma^2 / lambda_min.
struct UParams {
    double eta = 0.0;
    double gamma = 0.0;
    bool directed = false;
};

// Exploration-mixed exponential weights:
// (1 - gamma) * softmax(-eta * <context, row_i>) + gamma / K.
// Every entry is >= gamma / K and the vector sums to 1.
PolicyVector policy_u(const CumulativeEstimate& state, const Vec& context, const UParams& params);

// Pure exponential weights, softmax of -eta_t * <context, row_i>; the 1/K
// factor in the weights cancels in the ratio.
PolicyVector policy_ix(const CumulativeEstimate& state, const Vec& context, double eta_t);

// Learning / exploration rates for the undirected-graph tuning:
// eta = sqrt(log K / (2 K sigma^2 T / lambda_min + d * sum_t alpha_t)),
// gamma = eta * K * sigma^2 / lambda_min.
// alpha_bounds holds per-round upper bounds on the independence number;
// a single element is broadcast across all T rounds.
UParams schedule_u_undirected(int num_actions, double sigma, double lambda_min, int dimension,
                              std::int64_t horizon, std::span<const double> alpha_bounds);

// Directed-graph tuning:
// eta = (2 K sigma^2 T / lambda_min + 4 d * sum_t alpha_t)^(-1/2), same
// gamma coupling; requires the horizon to be long enough that
// log(1/gamma) >= 1.
UParams schedule_u_directed(int num_actions, double sigma, double lambda_min, int dimension,
                            std::int64_t horizon, std::span<const double> alpha_bounds);

// Per-round observation-ratio bound for directed graphs under uniform
// exploration: 4 alpha log(4 K^2 / (alpha gamma)).
double q_bound_u_directed(double alpha, int num_actions, double gamma);

// Adaptive rates for implicit exploration at round t, given the running sum
// of past Q values: beta_t = sqrt(log K / (K + sum)), eta_t = beta_t / sqrt(d).
// Returns (eta_t, beta_t).
std::pair<double, double> schedule_ix(std::int64_t t, int num_actions, int dimension,
                                      double q_running_sum);

// Per-round observation-ratio bound under implicit exploration:
// 2 alpha log(1 + (ceil(K^2 / beta) + K) / alpha) + 2.
double q_value_ix(double alpha, int num_actions, double beta_t);

// ------------------------------------------------------------------------
// Agents

enum class AlgorithmKind { kU, kUStar, kIX, kIXStar };

struct AlgorithmVariant {
    AlgorithmKind kind = AlgorithmKind::kU;

    // Star variants ignore side observations entirely: the round pipeline
    // treats the feedback graph as edgeless for them.
    bool uses_side_observations() const {
        return kind == AlgorithmKind::kU || kind == AlgorithmKind::kIX;
    }
    bool implicit_exploration() const {
        return kind == AlgorithmKind::kIX || kind == AlgorithmKind::kIXStar;
    }
    std::string_view selector() const;
};

// Maps "exp3-lgc-u", "exp3-lgc-u-star", "exp3-lgc-ix", "exp3-lgc-ix-star".
AlgorithmVariant parse_algorithm_selector(std::string_view selector);

// How schedules and the implicit-exploration Q updates obtain alpha: the
// exact independence number of the disclosed graph (greedy bound past the
// exact-search cap), or a fixed configured bound.
struct AlphaMode {
    bool exact = true;
    double fixed_value = 0.0;
};

double resolve_alpha(const FeedbackGraph& graph, const AlphaMode& mode);

struct AgentStep {
    int action = 0;
    PolicyVector policy;
};

// One agent instance drives one trial. step() must be followed by exactly
// one update(); the graph reaches the agent only at update time.
class Agent {
public:
    virtual ~Agent() = default;

    // Samples the action by inverse CDF over the policy with one uniform
    // draw from the action stream.
    virtual AgentStep step(const Vec& context, Prng& action_rng) = 0;

    // Consumes the disclosed graph, the observation set of the played
    // action, and the oracle draw; returns the per-action observation
    // probabilities used by the estimators.
    virtual Vec update(const FeedbackGraph& graph, const ObservationSet& observed,
                       const OracleDraw& oracle) = 0;

    virtual std::int64_t round() const = 0;
};

class Exp3LgcUAgent : public Agent {
public:
    Exp3LgcUAgent(int num_actions, int dimension, const Matrix& sigma_inv, UParams params,
                  double sigma, double lambda_min);

    AgentStep step(const Vec& context, Prng& action_rng) override;
    Vec update(const FeedbackGraph& graph, const ObservationSet& observed,
               const OracleDraw& oracle) override;
    std::int64_t round() const override { return state_.round(); }

    const UParams& params() const { return params_; }

private:
    CumulativeEstimate state_;
    Matrix sigma_inv_;
    UParams params_;
    double estimate_magnitude_cap_; // K sigma^2 / (lambda_min gamma)
    bool awaiting_update_ = false;
    PolicyVector last_policy_;
    Vec last_context_;
};

class Exp3LgcIXAgent : public Agent {
public:
    Exp3LgcIXAgent(int num_actions, int dimension, const Matrix& sigma_inv, AlphaMode alpha_mode);

    AgentStep step(const Vec& context, Prng& action_rng) override;
    Vec update(const FeedbackGraph& graph, const ObservationSet& observed,
               const OracleDraw& oracle) override;
    std::int64_t round() const override { return state_.round(); }

    double q_running_sum() const { return q_running_sum_; }
    std::pair<double, double> current_rates() const; // (eta_t, beta_t)

private:
    CumulativeEstimate state_;
    Matrix sigma_inv_;
    AlphaMode alpha_mode_;
    double q_running_sum_ = 0.0;
    bool awaiting_update_ = false;
    PolicyVector last_policy_;
    double last_beta_ = 0.0;
};

// Draws one action from a policy vector: single uniform draw, inverse CDF,
// boundary ties resolved toward the lower index.
int sample_action(const PolicyVector& policy, Prng& rng);

} // namespace lgcb
