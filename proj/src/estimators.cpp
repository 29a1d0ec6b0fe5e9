#include "lgcb/estimators.hpp"

#include <stdexcept>
#include <string>

namespace lgcb {

CumulativeEstimate::CumulativeEstimate(int num_actions, int dimension) : dimension_(dimension) {
    if (num_actions < 1 || dimension < 1)
        throw std::invalid_argument("CumulativeEstimate: need K >= 1 and d >= 1");
    rows_.assign(num_actions, Vec(dimension, 0.0));
}

const Vec& CumulativeEstimate::row(int action) const {
    if (action < 0 || action >= num_actions())
        throw std::out_of_range("CumulativeEstimate: action out of range");
    return rows_[action];
}

Vec& CumulativeEstimate::mutable_row(int action) {
    if (action < 0 || action >= num_actions())
        throw std::out_of_range("CumulativeEstimate: action out of range");
    return rows_[action];
}

Vec scaled_inverse_projection(bool observed, double scale, const Matrix& sigma_inv,
                              const Vec& oracle_context) {
    if (!observed) return Vec(oracle_context.size(), 0.0);
    Vec y = matvec(sigma_inv, oracle_context);
    for (double& v : y) v *= scale;
    return y;
}

EstimatedLossVector estimate_u(bool observed, double q_i, const Matrix& sigma_inv,
                               const Vec& oracle_context, double oracle_loss, int action) {
    if (!(q_i > 0.0))
        throw std::invalid_argument("estimate_u: q_i=" + std::to_string(q_i) +
                                    " must be positive (broken policy mixing?)");
    return {action, scaled_inverse_projection(observed, oracle_loss / q_i, sigma_inv,
                                              oracle_context)};
}

EstimatedLossVector estimate_ix(bool observed, double q_i, double beta, const Matrix& sigma_inv,
                                const Vec& oracle_context, double oracle_loss, int action) {
    if (!(beta > 0.0))
        throw std::invalid_argument("estimate_ix: beta=" + std::to_string(beta) +
                                    " must be positive");
    if (q_i < 0.0)
        throw std::invalid_argument("estimate_ix: q_i must be nonnegative");
    return {action, scaled_inverse_projection(observed, oracle_loss / (q_i + beta), sigma_inv,
                                              oracle_context)};
}

void accumulate(CumulativeEstimate& state, const std::vector<EstimatedLossVector>& estimates,
                std::int64_t round) {
    if (round != state.round())
        throw std::invalid_argument("accumulate: estimates are for round " + std::to_string(round) +
                                    " but state expects round " + std::to_string(state.round()));
    if (estimates.size() != static_cast<std::size_t>(state.num_actions()))
        throw std::invalid_argument("accumulate: expected one estimate per action");
    for (int i = 0; i < state.num_actions(); ++i) {
        const EstimatedLossVector& est = estimates[i];
        if (est.action != i)
            throw std::invalid_argument("accumulate: estimate " + std::to_string(i) +
                                        " carries action " + std::to_string(est.action));
        if (est.vector.size() != static_cast<std::size_t>(state.dimension()))
            throw std::invalid_argument("accumulate: estimate dimension mismatch");
        Vec& row = state.mutable_row(i);
        for (int c = 0; c < state.dimension(); ++c) row[c] += est.vector[c];
    }
    state.advance_round();
}

} // namespace lgcb
