#include "lgcb/verification.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "lgcb/rng.hpp"

namespace lgcb::verify {

namespace {

// Observation set of `action` straight from the edge list.
std::vector<bool> observed_mask(const FeedbackGraph& graph, int action) {
    std::vector<bool> mask(graph.num_actions(), false);
    mask[action] = true;
    for (auto [from, to] : graph.edges())
        if (from == action) mask[to] = true;
    return mask;
}

// q_i = pi(i) + sum over in-neighbors, straight from the edge list.
Vec reveal_probabilities(const FeedbackGraph& graph, const Vec& pi) {
    Vec q(pi);
    for (auto [from, to] : graph.edges()) q[to] += pi[from];
    return q;
}

void check_instance(const Vec& pi, const FeedbackGraph& graph, const DiscreteSupport& support,
                    const std::vector<Vec>& theta) {
    if (graph.num_actions() > 10)
        throw std::invalid_argument("estimator oracle: K must be <= 10");
    if (support.points.size() > 64)
        throw std::invalid_argument("estimator oracle: support must have <= 64 points");
    if (pi.size() != static_cast<std::size_t>(graph.num_actions()) ||
        theta.size() != pi.size())
        throw std::invalid_argument("estimator oracle: pi/theta/graph size mismatch");
}

} // namespace

DiscreteSupport bernoulli_support(int dimension, double p) {
    if (dimension < 1 || dimension > 6)
        throw std::invalid_argument("bernoulli_support: dimension must be in 1..6");
    DiscreteSupport support;
    double value = 1.0 / std::sqrt(static_cast<double>(dimension));
    for (unsigned mask = 0; mask < (1u << dimension); ++mask) {
        Vec x(dimension, 0.0);
        double prob = 1.0;
        for (int c = 0; c < dimension; ++c) {
            if (mask & (1u << c)) {
                x[c] = value;
                prob *= p;
            } else {
                prob *= 1.0 - p;
            }
        }
        support.points.push_back(std::move(x));
        support.probabilities.push_back(prob);
    }
    return support;
}

std::vector<Vec> exact_estimator_expectation(const Vec& pi, const FeedbackGraph& graph,
                                             const DiscreteSupport& support,
                                             const std::vector<Vec>& theta, EstimatorMode mode,
                                             double beta, const Matrix& sigma_inv) {
    check_instance(pi, graph, support, theta);
    int k = graph.num_actions();
    int d = static_cast<int>(support.points.front().size());
    Vec q = reveal_probabilities(graph, pi);

    std::vector<Vec> expectation(k, Vec(d, 0.0));
    for (int played = 0; played < k; ++played) {
        if (pi[played] == 0.0) continue;
        std::vector<bool> mask = observed_mask(graph, played);
        for (std::size_t s = 0; s < support.points.size(); ++s) {
            double weight = pi[played] * support.probabilities[s];
            if (weight == 0.0) continue;
            const Vec& x_tilde = support.points[s];
            Vec projected = matvec(sigma_inv, x_tilde);
            for (int i = 0; i < k; ++i) {
                if (!mask[i]) continue;
                double denom = mode == EstimatorMode::kU ? q[i] : q[i] + beta;
                double scale = weight * dot(x_tilde, theta[i]) / denom;
                for (int c = 0; c < d; ++c) expectation[i][c] += scale * projected[c];
            }
        }
    }
    return expectation;
}

double unbiasedness_deviation(const Vec& pi, const FeedbackGraph& graph,
                              const DiscreteSupport& support, const std::vector<Vec>& theta,
                              const Matrix& sigma_inv) {
    std::vector<Vec> expectation =
        exact_estimator_expectation(pi, graph, support, theta, EstimatorMode::kU, 0.0, sigma_inv);
    double worst = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i)
        for (std::size_t c = 0; c < theta[i].size(); ++c)
            worst = std::max(worst, std::fabs(expectation[i][c] - theta[i][c]));
    return worst;
}

IxIdentity ix_identity(const Vec& pi, const FeedbackGraph& graph, const DiscreteSupport& support,
                       const std::vector<Vec>& theta, double beta, const Matrix& sigma_inv,
                       const Vec& decision_context) {
    std::vector<Vec> expectation =
        exact_estimator_expectation(pi, graph, support, theta, EstimatorMode::kIX, beta,
                                    sigma_inv);
    Vec q = reveal_probabilities(graph, pi);
    IxIdentity identity;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        double true_loss = dot(decision_context, theta[i]);
        identity.lhs += pi[i] * dot(decision_context, expectation[i]);
        identity.rhs += pi[i] * true_loss - beta * pi[i] / (q[i] + beta) * true_loss;
        identity.plain += pi[i] * true_loss;
    }
    return identity;
}

int independence_number_bruteforce(const FeedbackGraph& graph) {
    int k = graph.num_actions();
    if (k > 20)
        throw std::invalid_argument("independence_number_bruteforce: K must be <= 20");
    std::vector<std::uint32_t> nbr(k, 0);
    for (auto [from, to] : graph.edges()) {
        nbr[from] |= 1u << to;
        nbr[to] |= 1u << from;
    }
    int best = 0;
    for (std::uint32_t subset = 0; subset < (1u << k); ++subset) {
        bool independent = true;
        for (int v = 0; v < k && independent; ++v)
            if ((subset >> v) & 1u)
                if (nbr[v] & subset) independent = false;
        if (independent) best = std::max(best, std::popcount(subset));
    }
    return best;
}

LemmaAudit lemma_sum_audit(const FeedbackGraph& graph, const Vec& pi, LemmaVariant variant,
                           double parameter) {
    if (pi.size() != static_cast<std::size_t>(graph.num_actions()))
        throw std::invalid_argument("lemma_sum_audit: pi dimension mismatch");
    if (graph.num_actions() > 12)
        throw std::invalid_argument("lemma_sum_audit: K must be <= 12 for the exact alpha");
    double sum = 0.0;
    for (double p : pi) {
        if (!(p >= 0.0)) throw std::invalid_argument("lemma_sum_audit: negative pi entry");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-10)
        throw std::invalid_argument("lemma_sum_audit: pi is not a distribution");

    double k = static_cast<double>(graph.num_actions());
    double alpha = static_cast<double>(independence_number_bruteforce(graph));
    Vec q = reveal_probabilities(graph, pi);

    LemmaAudit audit;
    switch (variant) {
        case LemmaVariant::kUndirected: {
            if (!graph.undirected())
                throw std::invalid_argument("lemma_sum_audit: undirected variant needs an "
                                            "undirected graph");
            for (std::size_t i = 0; i < pi.size(); ++i)
                if (pi[i] > 0.0) audit.lhs += pi[i] / q[i];
            audit.rhs = alpha;
            break;
        }
        case LemmaVariant::kDirectedWithEps: {
            double eps = parameter;
            if (!(eps > 0.0) || !(eps < 0.5))
                throw std::invalid_argument("lemma_sum_audit: eps must be in (0, 1/2)");
            for (double p : pi)
                if (p < eps)
                    throw std::invalid_argument("lemma_sum_audit: min pi violates pi(i) >= eps");
            for (std::size_t i = 0; i < pi.size(); ++i) audit.lhs += pi[i] / q[i];
            audit.rhs = 4.0 * alpha * std::log(4.0 * k / (alpha * eps));
            break;
        }
        case LemmaVariant::kIxWithC: {
            double c = parameter;
            if (!(c > 0.0)) throw std::invalid_argument("lemma_sum_audit: c must be positive");
            for (std::size_t i = 0; i < pi.size(); ++i) audit.lhs += pi[i] / (c + q[i]);
            audit.rhs = 2.0 * alpha * std::log(1.0 + (std::ceil(k * k / c) + k) / alpha) + 2.0;
            break;
        }
    }
    audit.pass = audit.lhs <= audit.rhs + 1e-10;
    return audit;
}

double regret_bound_value(BoundVariant variant, const BoundConstants& constants,
                          std::span<const double> alpha_seq) {
    const auto& c = constants;
    if (c.num_actions < 1 || c.dimension < 1 || c.horizon < 1)
        throw std::invalid_argument("regret_bound_value: K, d, T must be positive");
    if (!(c.sigma > 0.0) || !(c.lambda_min > 0.0))
        throw std::invalid_argument("regret_bound_value: sigma and lambda_min must be positive");
    auto alpha_at = [&](std::int64_t t) -> double {
        if (alpha_seq.empty()) return 0.0;
        if (alpha_seq.size() == 1) return alpha_seq[0];
        return alpha_seq[static_cast<std::size_t>(t - 1)];
    };
    if (alpha_seq.size() > 1 && alpha_seq.size() != static_cast<std::size_t>(c.horizon))
        throw std::invalid_argument("regret_bound_value: alpha_seq must have 0, 1, or T entries");

    double k = static_cast<double>(c.num_actions);
    double log_k = std::log(k);

    if (variant == BoundVariant::kImplicitExploration) {
        // Forward recursion: beta_t depends on the Q values before it.
        double q_sum = 0.0;
        for (std::int64_t t = 1; t <= c.horizon; ++t) {
            double beta = std::sqrt(log_k / (k + q_sum));
            double alpha = alpha_at(t);
            double q_t = alpha > 0.0
                             ? 2.0 * alpha * std::log(1.0 + (std::ceil(k * k / beta) + k) / alpha) +
                                   2.0
                             : 0.0;
            q_sum += q_t;
        }
        return 2.0 * (1.0 + std::sqrt(static_cast<double>(c.dimension))) *
               std::sqrt((k + q_sum) * log_k);
    }

    if (!(c.eta > 0.0)) throw std::invalid_argument("regret_bound_value: eta must be positive");
    double q_sum = 0.0;
    for (std::int64_t t = 1; t <= c.horizon; ++t) {
        double alpha = alpha_at(t);
        if (variant == BoundVariant::kUniformUndirected) {
            q_sum += alpha;
        } else {
            if (!(c.gamma > 0.0) || c.gamma >= 1.0)
                throw std::invalid_argument("regret_bound_value: gamma must be in (0,1)");
            q_sum += alpha > 0.0 ? 4.0 * alpha * std::log(4.0 * k * k / (alpha * c.gamma)) : 0.0;
        }
    }
    return log_k / c.eta +
           2.0 * c.eta * k * c.sigma * c.sigma * static_cast<double>(c.horizon) / c.lambda_min +
           c.eta * static_cast<double>(c.dimension) * q_sum;
}

// ----------------------------------------------------------------- audits

namespace {

struct AuditRow {
    std::string name;
    bool pass = false;
    std::string detail;
};

Vec random_full_support_policy(int k, Prng& rng, double floor = 0.05) {
    Vec pi(k);
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        pi[i] = floor + rng.next_double();
        total += pi[i];
    }
    for (double& p : pi) p /= total;
    return pi;
}

FeedbackGraph random_graph(int k, bool undirected, double edge_probability, Prng& rng) {
    std::vector<std::pair<int, int>> edges;
    if (undirected) {
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (rng.next_double() < edge_probability) edges.push_back({i, j});
    } else {
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (i != j && rng.next_double() < edge_probability) edges.push_back({i, j});
    }
    return FeedbackGraph(k, undirected, edges);
}

std::vector<Vec> random_theta(int k, int d, bool nonnegative, Prng& rng) {
    std::vector<Vec> theta(k, Vec(d, 0.0));
    for (int i = 0; i < k; ++i) {
        double norm_sq = 0.0;
        for (int c = 0; c < d; ++c) {
            double v = nonnegative ? rng.next_double() : 2.0 * rng.next_double() - 1.0;
            theta[i][c] = v;
            norm_sq += v * v;
        }
        // Keep ||theta|| <= 1 so losses stay in [-1, 1] on unit-norm supports.
        double norm = std::sqrt(norm_sq);
        if (norm > 1.0)
            for (int c = 0; c < d; ++c) theta[i][c] /= norm;
    }
    return theta;
}

std::string format_scientific(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

AuditRow audit_unbiasedness(int instances) {
    Prng rng(20260808, 1, StreamTag::kContext);
    double worst = 0.0;
    for (int n = 0; n < instances; ++n) {
        int k = 2 + static_cast<int>(rng.next_u64() % 9); // 2..10
        int d = 1 + static_cast<int>(rng.next_u64() % 3); // 1..3
        bool undirected = rng.next_double() < 0.5;
        double p = 0.2 + 0.6 * rng.next_double();
        FeedbackGraph graph = random_graph(k, undirected, 0.1 + 0.8 * rng.next_double(), rng);
        Vec pi = random_full_support_policy(k, rng);
        std::vector<Vec> theta = random_theta(k, d, false, rng);
        DiscreteSupport support = bernoulli_support(d, p);
        Matrix sigma(d, d);
        for (std::size_t s = 0; s < support.points.size(); ++s)
            add_scaled_outer(sigma, support.points[s], support.probabilities[s]);
        Matrix sigma_inv = invert(sigma);
        worst = std::max(worst, unbiasedness_deviation(pi, graph, support, theta, sigma_inv));
    }
    return {"estimator_unbiasedness_u", worst <= 1e-10,
            std::to_string(instances) + " instances, max err " + format_scientific(worst)};
}

AuditRow audit_optimism(int instances) {
    Prng rng(20260808, 2, StreamTag::kContext);
    double worst_identity = 0.0;
    double worst_optimism = 0.0;
    for (int n = 0; n < instances; ++n) {
        int k = 2 + static_cast<int>(rng.next_u64() % 9);
        int d = 1 + static_cast<int>(rng.next_u64() % 3);
        bool undirected = rng.next_double() < 0.5;
        double p = 0.2 + 0.6 * rng.next_double();
        double beta = 0.05 + rng.next_double();
        FeedbackGraph graph = random_graph(k, undirected, 0.1 + 0.8 * rng.next_double(), rng);
        Vec pi = random_full_support_policy(k, rng);
        std::vector<Vec> theta = random_theta(k, d, true, rng);
        DiscreteSupport support = bernoulli_support(d, p);
        Matrix sigma(d, d);
        for (std::size_t s = 0; s < support.points.size(); ++s)
            add_scaled_outer(sigma, support.points[s], support.probabilities[s]);
        Matrix sigma_inv = invert(sigma);
        // Decision context from the same support (nonnegative, so optimism
        // applies).
        const Vec& x = support.points[support.points.size() - 1];
        IxIdentity identity = ix_identity(pi, graph, support, theta, beta, sigma_inv, x);
        worst_identity = std::max(worst_identity, std::fabs(identity.lhs - identity.rhs));
        worst_optimism = std::max(worst_optimism, identity.lhs - identity.plain);
    }
    bool pass = worst_identity <= 1e-10 && worst_optimism <= 1e-10;
    return {"estimator_optimism_ix", pass,
            std::to_string(instances) + " instances, max identity err " +
                format_scientific(worst_identity) + ", max optimism excess " +
                format_scientific(worst_optimism)};
}

AuditRow audit_lemma(LemmaVariant variant, const char* name, int instances) {
    Prng rng(20260808, 3 + static_cast<std::uint64_t>(variant), StreamTag::kContext);
    int violations = 0;
    for (int n = 0; n < instances; ++n) {
        int k = 2 + static_cast<int>(rng.next_u64() % 11); // 2..12
        bool undirected = variant == LemmaVariant::kUndirected ? true : rng.next_double() < 0.5;
        FeedbackGraph graph = random_graph(k, undirected, 0.1 + 0.8 * rng.next_double(), rng);
        Vec pi = random_full_support_policy(k, rng, 0.02);
        double parameter = 0.0;
        if (variant == LemmaVariant::kDirectedWithEps) {
            parameter = *std::min_element(pi.begin(), pi.end());
            parameter = std::min(parameter, 0.49);
        } else if (variant == LemmaVariant::kIxWithC) {
            parameter = 0.01 + rng.next_double();
        }
        LemmaAudit audit = lemma_sum_audit(graph, pi, variant, parameter);
        if (!audit.pass) ++violations;
    }
    return {name, violations == 0,
            std::to_string(instances) + " instances, " + std::to_string(violations) +
                " violations"};
}

AuditRow audit_benchmark_graph_equality() {
    FeedbackGraph graph = FeedbackGraph::complete_plus_isolated(9, 1);
    Vec pi(10, 0.1);
    LemmaAudit audit = lemma_sum_audit(graph, pi, LemmaVariant::kUndirected, 0.0);
    bool pass = audit.pass && std::fabs(audit.lhs - 2.0) <= 1e-12 && audit.rhs == 2.0;
    return {"benchmark_graph_equality_case", pass,
            "lhs=" + format_scientific(audit.lhs) + ", alpha=" + format_scientific(audit.rhs)};
}

AuditRow audit_independence_known() {
    bool pass = independence_number_exact(FeedbackGraph::complete_plus_isolated(9, 1)) == 2;
    pass = pass && independence_number_exact(FeedbackGraph::complete(5)) == 1;
    pass = pass && independence_number_exact(FeedbackGraph::edgeless(7)) == 7;
    // 5-cycle.
    FeedbackGraph cycle(5, true, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    pass = pass && independence_number_exact(cycle) == 2 &&
           independence_number_bruteforce(cycle) == 2;
    return {"independence_exact_known_graphs", pass, "clique9+isolated, complete, edgeless, 5-cycle"};
}

AuditRow audit_independence_random(int instances) {
    Prng rng(20260808, 7, StreamTag::kContext);
    int mismatches = 0;
    int bound_violations = 0;
    for (int n = 0; n < instances; ++n) {
        int k = 2 + static_cast<int>(rng.next_u64() % 11); // 2..12
        bool undirected = rng.next_double() < 0.5;
        FeedbackGraph graph = random_graph(k, undirected, rng.next_double(), rng);
        int exact = independence_number_exact(graph);
        if (exact != independence_number_bruteforce(graph)) ++mismatches;
        if (independence_number_greedy_bound(graph) < exact) ++bound_violations;
    }
    return {"independence_exact_vs_bruteforce_and_greedy", mismatches == 0 && bound_violations == 0,
            std::to_string(instances) + " instances, " + std::to_string(mismatches) +
                " exact mismatches, " + std::to_string(bound_violations) +
                " greedy-bound violations"};
}

} // namespace

bool run_full_audit(std::ostream& out) {
    std::vector<AuditRow> rows;
    rows.push_back(audit_unbiasedness(100));
    rows.push_back(audit_optimism(100));
    rows.push_back(audit_lemma(LemmaVariant::kUndirected, "lemma_undirected_sum", 200));
    rows.push_back(audit_lemma(LemmaVariant::kDirectedWithEps, "lemma_directed_sum", 200));
    rows.push_back(audit_lemma(LemmaVariant::kIxWithC, "lemma_ix_sum", 200));
    rows.push_back(audit_benchmark_graph_equality());
    rows.push_back(audit_independence_known());
    rows.push_back(audit_independence_random(500));

    bool all_pass = true;
    for (const AuditRow& row : rows) {
        all_pass = all_pass && row.pass;
        out << (row.pass ? "PASS" : "FAIL") << "  " << row.name;
        for (std::size_t i = row.name.size(); i < 44; ++i) out << ' ';
        out << row.detail << '\n';
    }
    return all_pass;
}

} // namespace lgcb::verify
