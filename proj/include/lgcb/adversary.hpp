#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "lgcb/context.hpp"
#include "lgcb/graph.hpp"
#include "lgcb/linalg.hpp"
#include "lgcb/rng.hpp"

namespace lgcb {

// What the extra-observation oracle discloses after a play: a fresh context
// drawn independently of everything else, and the exact losses of every
// observed action under that context.
struct OracleDraw {
    Vec context;                  // X-tilde
    std::map<int, double> losses; // keyed exactly by the observation set
};

// The disclosed interaction prefix before round t. Preset adversaries are
// oblivious and ignore it; the parameter exists so nonoblivious adversaries
// fit the same interface.
struct InteractionHistory {
    std::vector<Vec> contexts;
    std::vector<int> actions;
    std::vector<double> realized_losses;

    std::size_t rounds() const { return actions.size(); }
};

// How the per-round feedback graph is produced.
struct GraphSpec {
    enum class Type { kEdgeless, kComplete, kCompletePlusIsolated, kExplicit, kErdosRenyi };

    Type type = Type::kEdgeless;
    int clique = 0;
    int isolated = 0;
    bool directed = false;
    bool per_round = false;                  // erdos_renyi only: fresh graph each round
    double edge_probability = 0.0;           // erdos_renyi only
    std::vector<std::pair<int, int>> edges;  // explicit only, 0-based

    bool random() const { return type == Type::kErdosRenyi; }
};

FeedbackGraph build_graph(const GraphSpec& spec, int num_actions, Prng& rng);

// Loss-vector process plus feedback-graph source for one experiment.
// Rounds are 1-based everywhere.
class Adversary {
public:
    virtual ~Adversary() = default;

    virtual int num_actions() const = 0;
    virtual int dimension() const = 0;
    virtual std::int64_t horizon() const = 0;
    virtual bool oblivious() const = 0;

    // True if the same graph is used for every round of a trial.
    virtual bool per_round_graph() const = 0;

    virtual std::vector<Vec> losses(std::int64_t t, const InteractionHistory& history) const = 0;
    virtual FeedbackGraph graph(std::int64_t t, const InteractionHistory& history,
                                Prng& rng) const = 0;
};

// The synthetic sudden-change process: every coordinate of theta_{i,t}
// equals scale_first * i * |cos t| / sqrt(d) through the change point and
// scale_second * i * |sin t| / sqrt(d) afterwards, with i the 1-based
// action index and t the raw round index in radians. Losses are
// nonnegative on a nonnegative support, so the process also serves the
// implicit-exploration algorithm.
class SuddenChangeAdversary : public Adversary {
public:
    SuddenChangeAdversary(int num_actions, int dimension, std::int64_t horizon,
                          std::int64_t change_point, double scale_first, double scale_second,
                          GraphSpec graph_spec, double context_norm_bound);

    int num_actions() const override { return num_actions_; }
    int dimension() const override { return dimension_; }
    std::int64_t horizon() const override { return horizon_; }
    bool oblivious() const override { return true; }
    bool per_round_graph() const override { return graph_spec_.per_round; }

    std::vector<Vec> losses(std::int64_t t, const InteractionHistory& history) const override;
    FeedbackGraph graph(std::int64_t t, const InteractionHistory& history,
                        Prng& rng) const override;

    std::int64_t change_point() const { return change_point_; }

private:
    int num_actions_;
    int dimension_;
    std::int64_t horizon_;
    std::int64_t change_point_;
    double scale_first_;
    double scale_second_;
    GraphSpec graph_spec_;
};

// Oblivious adversary backed by an explicit table of loss vectors,
// table[t-1][i] = theta_{i,t}.
class TableAdversary : public Adversary {
public:
    TableAdversary(std::vector<std::vector<Vec>> table, GraphSpec graph_spec,
                   double context_norm_bound);

    int num_actions() const override { return num_actions_; }
    int dimension() const override { return dimension_; }
    std::int64_t horizon() const override { return static_cast<std::int64_t>(table_.size()); }
    bool oblivious() const override { return true; }
    bool per_round_graph() const override { return graph_spec_.per_round; }

    std::vector<Vec> losses(std::int64_t t, const InteractionHistory& history) const override;
    FeedbackGraph graph(std::int64_t t, const InteractionHistory& history,
                        Prng& rng) const override;

private:
    std::vector<std::vector<Vec>> table_;
    int num_actions_;
    int dimension_;
    GraphSpec graph_spec_;
};

// Draws the oracle context fresh from D (independent stream) and evaluates
// the losses of exactly the observed actions under it.
OracleDraw oracle_draw(const ContextDistribution& dist, const Adversary& adversary,
                       std::int64_t t, const InteractionHistory& history,
                       const ObservationSet& observed, Prng& oracle_rng);

} // namespace lgcb
