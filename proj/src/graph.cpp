#include "lgcb/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace lgcb {

namespace {

constexpr int kExactAlphaMaxActions = 25;
constexpr double kSimplexTolerance = 1e-10;

} // namespace

FeedbackGraph::FeedbackGraph(int num_actions, bool undirected,
                             const std::vector<std::pair<int, int>>& edges)
    : num_actions_(num_actions), undirected_(undirected) {
    if (num_actions <= 0) throw std::invalid_argument("FeedbackGraph: num_actions must be positive");
    words_ = (num_actions + 63) / 64;
    out_bits_.assign(static_cast<std::size_t>(num_actions) * words_, 0u);
    in_bits_.assign(static_cast<std::size_t>(num_actions) * words_, 0u);

    std::set<std::pair<int, int>> canonical;
    for (auto [from, to] : edges) {
        check_node(from, "edge endpoint");
        check_node(to, "edge endpoint");
        if (from == to)
            throw std::invalid_argument("FeedbackGraph: self-loops are implicit, not stored");
        canonical.insert({from, to});
        if (undirected_) canonical.insert({to, from});
    }
    edges_.assign(canonical.begin(), canonical.end());
    for (auto [from, to] : edges_) {
        out_bits_[static_cast<std::size_t>(from) * words_ + to / 64] |= 1ULL << (to % 64);
        in_bits_[static_cast<std::size_t>(to) * words_ + from / 64] |= 1ULL << (from % 64);
    }
}

FeedbackGraph FeedbackGraph::edgeless(int num_actions) {
    return FeedbackGraph(num_actions, true, {});
}

FeedbackGraph FeedbackGraph::complete(int num_actions) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < num_actions; ++i)
        for (int j = i + 1; j < num_actions; ++j) edges.push_back({i, j});
    return FeedbackGraph(num_actions, true, edges);
}

FeedbackGraph FeedbackGraph::complete_plus_isolated(int clique, int isolated) {
    if (clique < 1 || isolated < 0)
        throw std::invalid_argument("complete_plus_isolated: need clique >= 1, isolated >= 0");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < clique; ++i)
        for (int j = i + 1; j < clique; ++j) edges.push_back({i, j});
    return FeedbackGraph(clique + isolated, true, edges);
}

void FeedbackGraph::check_node(int node, const char* what) const {
    if (node < 0 || node >= num_actions_)
        throw std::out_of_range(std::string(what) + " " + std::to_string(node) +
                                " out of range for K=" + std::to_string(num_actions_));
}

bool FeedbackGraph::has_edge(int from, int to) const {
    check_node(from, "node");
    check_node(to, "node");
    return (word(out_bits_, from, to / 64) >> (to % 64)) & 1u;
}

std::vector<int> FeedbackGraph::out_neighbors(int node) const {
    check_node(node, "node");
    std::vector<int> result;
    for (int w = 0; w < words_; ++w) {
        std::uint64_t bits = word(out_bits_, node, w);
        while (bits) {
            int b = std::countr_zero(bits);
            result.push_back(w * 64 + b);
            bits &= bits - 1;
        }
    }
    return result;
}

std::vector<int> FeedbackGraph::in_neighbors(int node) const {
    check_node(node, "node");
    std::vector<int> result;
    for (int w = 0; w < words_; ++w) {
        std::uint64_t bits = word(in_bits_, node, w);
        while (bits) {
            int b = std::countr_zero(bits);
            result.push_back(w * 64 + b);
            bits &= bits - 1;
        }
    }
    return result;
}

FeedbackGraph FeedbackGraph::without_edges() const {
    return FeedbackGraph(num_actions_, undirected_, {});
}

std::uint64_t FeedbackGraph::hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ULL;
    };
    mix(static_cast<std::uint64_t>(num_actions_));
    mix(undirected_ ? 1u : 0u);
    for (auto [from, to] : edges_) {
        mix(static_cast<std::uint64_t>(from) + 1);
        mix(static_cast<std::uint64_t>(to) + 1);
    }
    return h;
}

std::vector<std::uint64_t> FeedbackGraph::symmetrized_masks() const {
    if (num_actions_ > 64)
        throw std::invalid_argument("symmetrized_masks: only available for K <= 64");
    std::vector<std::uint64_t> masks(num_actions_, 0u);
    for (auto [from, to] : edges_) {
        masks[from] |= 1ULL << to;
        masks[to] |= 1ULL << from;
    }
    return masks;
}

bool ObservationSet::contains(int node) const {
    return std::binary_search(members.begin(), members.end(), node);
}

ObservationSet observation_set(const FeedbackGraph& graph, int action) {
    if (action < 0 || action >= graph.num_actions())
        throw std::out_of_range("observation_set: action " + std::to_string(action) +
                                " out of range for K=" + std::to_string(graph.num_actions()));
    ObservationSet s;
    s.action = action;
    s.members = graph.out_neighbors(action);
    s.members.insert(std::lower_bound(s.members.begin(), s.members.end(), action), action);
    return s;
}

Vec observation_probabilities(const FeedbackGraph& graph, const Vec& pi) {
    if (pi.size() != static_cast<std::size_t>(graph.num_actions()))
        throw std::invalid_argument("observation_probabilities: pi has dimension " +
                                    std::to_string(pi.size()) + ", expected K=" +
                                    std::to_string(graph.num_actions()));
    double sum = 0.0;
    for (double p : pi) {
        if (!(p >= 0.0))
            throw std::invalid_argument("observation_probabilities: pi has a negative entry");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > kSimplexTolerance)
        throw std::invalid_argument("observation_probabilities: pi sums to " +
                                    std::to_string(sum) + ", not 1");
    Vec q(pi);
    for (auto [from, to] : graph.edges()) q[to] += pi[from];
    return q;
}

namespace {

// Plain branch and bound on bitmasks: branch on the highest-degree
// remaining vertex, prune with |candidates| + chosen <= best.
void mis_search(std::uint64_t candidates, int chosen, const std::vector<std::uint64_t>& nbr,
                int& best) {
    int remaining = std::popcount(candidates);
    if (chosen + remaining <= best) return;
    if (remaining == 0) {
        best = std::max(best, chosen);
        return;
    }
    int pick = -1;
    int pick_degree = -1;
    std::uint64_t scan = candidates;
    while (scan) {
        int v = std::countr_zero(scan);
        scan &= scan - 1;
        int deg = std::popcount(nbr[v] & candidates);
        if (deg > pick_degree) {
            pick_degree = deg;
            pick = v;
        }
    }
    // Isolated remainder: everything left is independent.
    if (pick_degree == 0) {
        best = std::max(best, chosen + remaining);
        return;
    }
    std::uint64_t bit = 1ULL << pick;
    mis_search(candidates & ~(nbr[pick] | bit), chosen + 1, nbr, best);
    mis_search(candidates & ~bit, chosen, nbr, best);
}

} // namespace

int independence_number_exact(const FeedbackGraph& graph) {
    int k = graph.num_actions();
    if (k > kExactAlphaMaxActions)
        throw std::invalid_argument(
            "independence_number_exact: K=" + std::to_string(k) + " exceeds the exact-search cap " +
            std::to_string(kExactAlphaMaxActions) + "; use independence_number_greedy_bound");
    std::vector<std::uint64_t> nbr = graph.symmetrized_masks();
    int best = 0;
    std::uint64_t all = (k == 64) ? ~0ULL : ((1ULL << k) - 1);
    mis_search(all, 0, nbr, best);
    return best;
}

int independence_number_greedy_bound(const FeedbackGraph& graph) {
    int k = graph.num_actions();
    // Greedy maximal matching on the symmetrized graph, lowest indices first.
    std::vector<bool> matched(k, false);
    std::vector<std::vector<int>> adj(k);
    for (auto [from, to] : graph.edges()) {
        adj[from].push_back(to);
        adj[to].push_back(from);
    }
    int matching = 0;
    for (int u = 0; u < k; ++u) {
        if (matched[u]) continue;
        std::sort(adj[u].begin(), adj[u].end());
        for (int v : adj[u]) {
            if (v == u || matched[v]) continue;
            matched[u] = matched[v] = true;
            ++matching;
            break;
        }
    }
    return k - matching;
}

} // namespace lgcb
