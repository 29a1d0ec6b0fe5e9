#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "lgcb/graph.hpp"
#include "lgcb/linalg.hpp"

namespace lgcb::verify {

// Brute-force checks of the estimator identities and the graph sum bounds at small
// scale. Everything here re-derives observation sets, observation
// probabilities, second moments, and independence numbers from first
// principles (edge lists and support enumeration), so the checks share no
// code path with the implementation they audit.

// Finite context support for exact expectations.
struct DiscreteSupport {
    std::vector<Vec> points;
    Vec probabilities;
};

// All 2^d points of the product Bernoulli on {0, 1/sqrt(d)} coordinates.
DiscreteSupport bernoulli_support(int dimension, double p);

enum class EstimatorMode { kU, kIX };

// E[theta_hat_i | X_t] by full enumeration over the played action (weighted
// by pi) and the oracle context (weighted by its support probability).
// Support size is capped at 64 points, K at 10.
std::vector<Vec> exact_estimator_expectation(const Vec& pi, const FeedbackGraph& graph,
                                             const DiscreteSupport& support,
                                             const std::vector<Vec>& theta, EstimatorMode mode,
                                             double beta, const Matrix& sigma_inv);

// Max componentwise |E[theta_hat_i] - theta_i| over all i.
double unbiasedness_deviation(const Vec& pi, const FeedbackGraph& graph,
                              const DiscreteSupport& support, const std::vector<Vec>& theta,
                              const Matrix& sigma_inv);

// Both sides of the implicit-exploration identity for a decision context x:
// lhs = sum_i pi(i) <x, E[theta_hat_i]>,
// rhs = sum_i pi(i) <x, theta_i> - beta sum_i pi(i)/(q_i+beta) <x, theta_i>,
// plain = sum_i pi(i) <x, theta_i> (the optimism ceiling).
struct IxIdentity {
    double lhs = 0.0;
    double rhs = 0.0;
    double plain = 0.0;
};
IxIdentity ix_identity(const Vec& pi, const FeedbackGraph& graph, const DiscreteSupport& support,
                       const std::vector<Vec>& theta, double beta, const Matrix& sigma_inv,
                       const Vec& decision_context);

// Exhaustive independence number over all vertex subsets; requires K <= 20.
int independence_number_bruteforce(const FeedbackGraph& graph);

enum class LemmaVariant { kUndirected, kDirectedWithEps, kIxWithC };

struct LemmaAudit {
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

// lhs = sum_i pi(i)/q(i) (or /(c + q(i)) for the implicit-exploration
// variant), rhs = the matching graph-theoretic bound from the exact
// independence number. parameter is eps for the directed variant and c for
// the implicit-exploration variant.
LemmaAudit lemma_sum_audit(const FeedbackGraph& graph, const Vec& pi, LemmaVariant variant,
                           double parameter);

enum class BoundVariant { kUniformUndirected, kUniformDirected, kImplicitExploration };

struct BoundConstants {
    int num_actions = 0;
    int dimension = 0;
    double sigma = 0.0;
    double lambda_min = 0.0;
    std::int64_t horizon = 0;
    double eta = 0.0;   // uniform-exploration variants
    double gamma = 0.0; // uniform-exploration, directed
};

// Numeric value of the matching regret upper bound, fed with realized or
// bounded per-round independence numbers. alpha_seq of size 1 broadcasts
// over the horizon.
double regret_bound_value(BoundVariant variant, const BoundConstants& constants,
                          std::span<const double> alpha_seq);

// Runs the whole audit battery (estimator identities, sum bounds, independence-number
// cross-checks) and prints one pass/fail row per audit. Returns true when
// everything passed.
bool run_full_audit(std::ostream& out);

} // namespace lgcb::verify
