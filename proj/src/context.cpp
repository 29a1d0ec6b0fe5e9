#include "lgcb/context.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lgcb {

namespace {

constexpr double kSingularEigenvalue = 1e-12;

Matrix bernoulli_second_moment(int d, double p) {
    Matrix sigma(d, d, p * p / d);
    for (int i = 0; i < d; ++i) sigma(i, i) = p / d;
    return sigma;
}

} // namespace

ContextDistribution ContextDistribution::bernoulli_scaled(int dimension, double p) {
    if (dimension < 1) throw std::invalid_argument("bernoulli_scaled: dimension must be >= 1");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("bernoulli_scaled: p must be in [0,1]");
    ContextDistribution dist;
    dist.kind_ = ContextKind::kBernoulliScaled;
    dist.dimension_ = dimension;
    dist.p_ = p;
    dist.norm_bound_ = p > 0.0 ? 1.0 : 0.0; // all-nonzero point has norm exactly 1
    // Eigenvalues of (p - p^2)/d I + (p^2/d) 11^T in closed form.
    double base = p * (1.0 - p) / dimension;
    dist.smallest_eigenvalue_ = dimension == 1 ? p : base;
    dist.singular_ = dist.smallest_eigenvalue_ <= kSingularEigenvalue;
    if (!dist.singular_) dist.finalize_moments(bernoulli_second_moment(dimension, p));
    return dist;
}

ContextDistribution ContextDistribution::custom_discrete(std::vector<Vec> points,
                                                         Vec probabilities) {
    if (points.empty()) throw std::invalid_argument("custom_discrete: empty support");
    if (points.size() != probabilities.size())
        throw std::invalid_argument("custom_discrete: points/probabilities size mismatch");
    int d = static_cast<int>(points.front().size());
    if (d < 1) throw std::invalid_argument("custom_discrete: zero-dimensional support point");
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != static_cast<std::size_t>(d))
            throw std::invalid_argument("custom_discrete: support points of mixed dimension");
        if (!(probabilities[i] >= 0.0))
            throw std::invalid_argument("custom_discrete: negative probability");
        total += probabilities[i];
    }
    if (std::fabs(total - 1.0) > 1e-10)
        throw std::invalid_argument("custom_discrete: probabilities sum to " +
                                    std::to_string(total) + ", not 1");

    ContextDistribution dist;
    dist.kind_ = ContextKind::kCustomDiscrete;
    dist.dimension_ = d;
    dist.points_ = std::move(points);
    dist.probabilities_ = std::move(probabilities);

    double norm_bound = 0.0;
    Matrix sigma(d, d);
    for (std::size_t i = 0; i < dist.points_.size(); ++i) {
        add_scaled_outer(sigma, dist.points_[i], dist.probabilities_[i]);
        norm_bound = std::max(norm_bound, std::sqrt(dot(dist.points_[i], dist.points_[i])));
    }
    dist.norm_bound_ = norm_bound;
    dist.smallest_eigenvalue_ = symmetric_eigenvalues(sigma).front();
    dist.singular_ = dist.smallest_eigenvalue_ <= kSingularEigenvalue;
    if (!dist.singular_) dist.finalize_moments(std::move(sigma));
    return dist;
}

void ContextDistribution::finalize_moments(Matrix sigma) {
    second_moment_inverse_ = invert(sigma);
    second_moment_ = std::move(sigma);
}

const Matrix& ContextDistribution::second_moment() const {
    if (singular_)
        throw std::runtime_error("second moment is singular (smallest eigenvalue <= 1e-12); "
                                 "the distribution violates the positive-definiteness assumption");
    return second_moment_;
}

const Matrix& ContextDistribution::second_moment_inverse() const {
    second_moment(); // shares the singularity check
    return second_moment_inverse_;
}

Vec ContextDistribution::sample(Prng& rng) const {
    if (kind_ == ContextKind::kBernoulliScaled) {
        Vec x(dimension_, 0.0);
        double value = 1.0 / std::sqrt(static_cast<double>(dimension_));
        for (int i = 0; i < dimension_; ++i)
            if (rng.next_double() < p_) x[i] = value;
        return x;
    }
    double u = rng.next_double();
    double c = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        c += probabilities_[i];
        if (u < c) return points_[i];
    }
    return points_.back();
}

Vec sample_context(const ContextDistribution& dist, Prng& rng) {
    return dist.sample(rng);
}

Matrix exact_second_moment(const ContextDistribution& dist) {
    return dist.second_moment();
}

} // namespace lgcb
