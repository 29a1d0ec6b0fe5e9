#pragma once

#include <vector>

#include "lgcb/linalg.hpp"
#include "lgcb/rng.hpp"

namespace lgcb {

enum class ContextKind {
    kBernoulliScaled, // each coordinate independently 0 or 1/sqrt(d)
    kCustomDiscrete,  // finite support with explicit probabilities
};

// The context distribution D, known to the agent in advance. Carries the
// exact second moment Sigma = E[X X^T], its inverse, the smallest
// eigenvalue, and the support norm bound that the estimators and schedules
// consume. Immutable after construction.
class ContextDistribution {
public:
    static ContextDistribution bernoulli_scaled(int dimension, double p);
    static ContextDistribution custom_discrete(std::vector<Vec> points, Vec probabilities);

    ContextKind kind() const { return kind_; }
    int dimension() const { return dimension_; }
    double bernoulli_p() const { return p_; }

    // Support accessors for custom_discrete.
    const std::vector<Vec>& points() const { return points_; }
    const Vec& probabilities() const { return probabilities_; }

    const Matrix& second_moment() const;         // throws if singular
    const Matrix& second_moment_inverse() const; // throws if singular
    double smallest_eigenvalue() const { return smallest_eigenvalue_; }
    double norm_bound() const { return norm_bound_; }
    bool singular() const { return singular_; }

    Vec sample(Prng& rng) const;

private:
    ContextDistribution() = default;
    void finalize_moments(Matrix sigma);

    ContextKind kind_ = ContextKind::kBernoulliScaled;
    int dimension_ = 0;
    double p_ = 0.0;
    std::vector<Vec> points_;
    Vec probabilities_;

    Matrix second_moment_;
    Matrix second_moment_inverse_;
    double smallest_eigenvalue_ = 0.0;
    double norm_bound_ = 0.0;
    bool singular_ = true;
};

Vec sample_context(const ContextDistribution& dist, Prng& rng);

// Exact E[X X^T]: closed form for the scaled Bernoulli distribution
// (diagonal p/d, off-diagonal p^2/d), probability-weighted outer products
// for a discrete support. Throws if the result is singular
// (smallest eigenvalue <= 1e-12), since the estimators need its inverse.
Matrix exact_second_moment(const ContextDistribution& dist);

} // namespace lgcb
