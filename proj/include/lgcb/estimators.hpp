#pragma once

#include <cstdint>
#include <vector>

#include "lgcb/linalg.hpp"

namespace lgcb {

struct EstimatedLossVector {
    int action = 0;
    Vec vector; // zero whenever the action was not observed
};

// Running sums of estimated loss vectors, row i = sum over completed rounds
// of theta_hat_{i,s}. This is the entire state of both algorithms; round()
// is the 1-based index of the next round to absorb.
class CumulativeEstimate {
public:
    CumulativeEstimate(int num_actions, int dimension);

    int num_actions() const { return static_cast<int>(rows_.size()); }
    int dimension() const { return dimension_; }
    std::int64_t round() const { return round_; }

    const Vec& row(int action) const;
    Vec& mutable_row(int action);
    void advance_round() { ++round_; }

private:
    std::vector<Vec> rows_;
    int dimension_;
    std::int64_t round_ = 1;
};

// Shared core of both estimators: scale * Sigma^{-1} * x_tilde, or the zero
// vector when the action was unobserved.
Vec scaled_inverse_projection(bool observed, double scale, const Matrix& sigma_inv,
                              const Vec& oracle_context);

// Importance-weighted estimate used with uniform exploration:
// indicator / q_i * Sigma^{-1} * x_tilde * loss. q_i must be positive (the
// exploration mixing guarantees q_i >= gamma / K).
EstimatedLossVector estimate_u(bool observed, double q_i, const Matrix& sigma_inv,
                               const Vec& oracle_context, double oracle_loss, int action = 0);

// Implicit-exploration estimate: the denominator is biased upward by beta,
// indicator / (q_i + beta) * Sigma^{-1} * x_tilde * loss. beta must be
// positive.
EstimatedLossVector estimate_ix(bool observed, double q_i, double beta, const Matrix& sigma_inv,
                                const Vec& oracle_context, double oracle_loss, int action = 0);

// Adds one estimate per action into the state for round `round`, which must
// equal state.round(); estimates must carry actions 0..K-1 exactly once, in
// order.
void accumulate(CumulativeEstimate& state, const std::vector<EstimatedLossVector>& estimates,
                std::int64_t round);

} // namespace lgcb
