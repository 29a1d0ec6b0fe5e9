#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lgcb/linalg.hpp"

namespace lgcb {

// Per-round feedback graph over the action set. Action indices are 0-based
// in memory; file formats carry 1-based indices and convert at the boundary.
// Self-observation is implicit and never stored as an edge. Immutable after
// construction; in- and out-neighbor bitsets are both precomputed because
// observation sets need out-neighbors and observation probabilities need
// in-neighbors.
class FeedbackGraph {
public:
    // Edges are ordered pairs (from, to). With undirected set, each stored
    // edge is symmetrized so (i,j) is present iff (j,i) is.
    FeedbackGraph(int num_actions, bool undirected,
                  const std::vector<std::pair<int, int>>& edges);

    static FeedbackGraph edgeless(int num_actions);
    static FeedbackGraph complete(int num_actions);
    // Clique on the first `clique` actions, plus `isolated` actions with no
    // edges at all.
    static FeedbackGraph complete_plus_isolated(int clique, int isolated);

    int num_actions() const { return num_actions_; }
    bool undirected() const { return undirected_; }
    bool has_edge(int from, int to) const;
    std::size_t num_edges() const { return edges_.size(); }

    // Sorted canonical list of stored directed pairs.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    std::vector<int> out_neighbors(int node) const;
    std::vector<int> in_neighbors(int node) const;

    // Same action set, no edges.
    FeedbackGraph without_edges() const;

    // FNV-1a over (K, undirected, canonical edge list); stable across runs.
    std::uint64_t hash() const;

    // Adjacency where two nodes count as connected if an edge exists in
    // either direction (how independence is defined for directed graphs).
    std::vector<std::uint64_t> symmetrized_masks() const;

private:
    void check_node(int node, const char* what) const;
    std::uint64_t word(const std::vector<std::uint64_t>& bits, int node, int w) const {
        return bits[static_cast<std::size_t>(node) * words_ + w];
    }

    int num_actions_ = 0;
    bool undirected_ = false;
    int words_ = 0;
    std::vector<std::uint64_t> out_bits_;
    std::vector<std::uint64_t> in_bits_;
    std::vector<std::pair<int, int>> edges_;
};

// The set of actions whose losses are revealed when `action` is played:
// the action itself plus its out-neighbors.
struct ObservationSet {
    int action = 0;
    std::vector<int> members; // sorted, always contains action

    bool contains(int node) const;
};

ObservationSet observation_set(const FeedbackGraph& graph, int action);

// Component i is pi[i] plus the probabilities of i's in-neighbors: the
// probability that action i's loss is revealed this round. pi must be a
// probability vector over the graph's actions (simplex tolerance 1e-10).
Vec observation_probabilities(const FeedbackGraph& graph, const Vec& pi);

// Exact independence number by branch and bound; requires K <= 25. For
// directed graphs, two nodes are connected if an edge exists in either
// direction.
int independence_number_exact(const FeedbackGraph& graph);

// Upper bound on the independence number that works at any K: num_actions
// minus the size of a greedily built maximal matching. A vertex cover must
// pick one endpoint per matching edge, so alpha(G) = K - tau(G) <= K - |M|.
int independence_number_greedy_bound(const FeedbackGraph& graph);

} // namespace lgcb
