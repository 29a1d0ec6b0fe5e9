#include "lgcb/adversary.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lgcb {

FeedbackGraph build_graph(const GraphSpec& spec, int num_actions, Prng& rng) {
    switch (spec.type) {
        case GraphSpec::Type::kEdgeless:
            return FeedbackGraph::edgeless(num_actions);
        case GraphSpec::Type::kComplete:
            return FeedbackGraph::complete(num_actions);
        case GraphSpec::Type::kCompletePlusIsolated: {
            if (spec.clique + spec.isolated != num_actions)
                throw std::invalid_argument("graph: clique + isolated must equal K");
            return FeedbackGraph::complete_plus_isolated(spec.clique, spec.isolated);
        }
        case GraphSpec::Type::kExplicit:
            return FeedbackGraph(num_actions, !spec.directed, spec.edges);
        case GraphSpec::Type::kErdosRenyi: {
            std::vector<std::pair<int, int>> edges;
            if (spec.directed) {
                for (int i = 0; i < num_actions; ++i)
                    for (int j = 0; j < num_actions; ++j)
                        if (i != j && rng.next_double() < spec.edge_probability)
                            edges.push_back({i, j});
            } else {
                for (int i = 0; i < num_actions; ++i)
                    for (int j = i + 1; j < num_actions; ++j)
                        if (rng.next_double() < spec.edge_probability) edges.push_back({i, j});
            }
            return FeedbackGraph(num_actions, !spec.directed, edges);
        }
    }
    throw std::logic_error("build_graph: unknown graph type");
}

SuddenChangeAdversary::SuddenChangeAdversary(int num_actions, int dimension, std::int64_t horizon,
                                             std::int64_t change_point, double scale_first,
                                             double scale_second, GraphSpec graph_spec,
                                             double context_norm_bound)
    : num_actions_(num_actions),
      dimension_(dimension),
      horizon_(horizon),
      change_point_(change_point),
      scale_first_(scale_first),
      scale_second_(scale_second),
      graph_spec_(std::move(graph_spec)) {
    if (num_actions < 1 || dimension < 1 || horizon < 0)
        throw std::invalid_argument("sudden_change_synthetic: bad dimensions");
    if (scale_first < 0.0 || scale_second < 0.0)
        throw std::invalid_argument("sudden_change_synthetic: scales must be nonnegative");
    // |<x, theta_{i,t}>| <= ||theta_{i,t}|| * sigma and ||theta_{i,t}|| <=
    // scale * K, so the [-1,1] loss bound holds iff scale * K * sigma <= 1.
    double worst = std::max(scale_first, scale_second) * num_actions * context_norm_bound;
    if (worst > 1.0 + 1e-12)
        throw std::invalid_argument(
            "sudden_change_synthetic: losses can leave [-1,1]; max_i ||theta_{i,t}|| * sigma = " +
            std::to_string(worst));
}

std::vector<Vec> SuddenChangeAdversary::losses(std::int64_t t, const InteractionHistory&) const {
    if (t < 1 || (horizon_ > 0 && t > horizon_))
        throw std::out_of_range("sudden_change_synthetic: round " + std::to_string(t) +
                                " outside 1.." + std::to_string(horizon_));
    double angle = static_cast<double>(t);
    double wave = t <= change_point_ ? scale_first_ * std::fabs(std::cos(angle))
                                     : scale_second_ * std::fabs(std::sin(angle));
    double root_d = std::sqrt(static_cast<double>(dimension_));
    std::vector<Vec> theta(num_actions_);
    for (int i = 0; i < num_actions_; ++i)
        theta[i].assign(dimension_, wave * static_cast<double>(i + 1) / root_d);
    return theta;
}

FeedbackGraph SuddenChangeAdversary::graph(std::int64_t, const InteractionHistory&,
                                           Prng& rng) const {
    return build_graph(graph_spec_, num_actions_, rng);
}

TableAdversary::TableAdversary(std::vector<std::vector<Vec>> table, GraphSpec graph_spec,
                               double context_norm_bound)
    : table_(std::move(table)), graph_spec_(std::move(graph_spec)) {
    if (table_.empty()) throw std::invalid_argument("custom_oblivious: empty loss table");
    num_actions_ = static_cast<int>(table_.front().size());
    if (num_actions_ < 1) throw std::invalid_argument("custom_oblivious: no actions in table");
    dimension_ = static_cast<int>(table_.front().front().size());
    for (const auto& round : table_) {
        if (static_cast<int>(round.size()) != num_actions_)
            throw std::invalid_argument("custom_oblivious: ragged loss table (actions)");
        for (const auto& theta : round) {
            if (static_cast<int>(theta.size()) != dimension_)
                throw std::invalid_argument("custom_oblivious: ragged loss table (dimension)");
            double norm = std::sqrt(dot(theta, theta));
            if (norm * context_norm_bound > 1.0 + 1e-12)
                throw std::invalid_argument(
                    "custom_oblivious: losses can leave [-1,1]; ||theta|| * sigma = " +
                    std::to_string(norm * context_norm_bound));
        }
    }
}

std::vector<Vec> TableAdversary::losses(std::int64_t t, const InteractionHistory&) const {
    if (t < 1 || t > horizon())
        throw std::out_of_range("custom_oblivious: round " + std::to_string(t) + " outside 1.." +
                                std::to_string(horizon()));
    return table_[static_cast<std::size_t>(t - 1)];
}

FeedbackGraph TableAdversary::graph(std::int64_t, const InteractionHistory&, Prng& rng) const {
    return build_graph(graph_spec_, num_actions_, rng);
}

OracleDraw oracle_draw(const ContextDistribution& dist, const Adversary& adversary,
                       std::int64_t t, const InteractionHistory& history,
                       const ObservationSet& observed, Prng& oracle_rng) {
    OracleDraw draw;
    draw.context = dist.sample(oracle_rng);
    std::vector<Vec> theta = adversary.losses(t, history);
    for (int i : observed.members) draw.losses[i] = dot(draw.context, theta[i]);
    return draw;
}

} // namespace lgcb
