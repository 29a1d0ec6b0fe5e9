#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lgcb/graph.hpp"
#include "lgcb/rng.hpp"

using namespace lgcb;

namespace {

FeedbackGraph random_graph(int k, bool undirected, double edge_probability, Prng& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (i == j || (undirected && j < i)) continue;
            if (rng.next_double() < edge_probability) edges.push_back({i, j});
        }
    }
    return FeedbackGraph(k, undirected, edges);
}

Vec random_simplex(int k, Prng& rng) {
    Vec pi(k);
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        pi[i] = 0.01 + rng.next_double();
        total += pi[i];
    }
    for (double& p : pi) p /= total;
    return pi;
}

// Independent oracle: exhaustive subset enumeration.
int alpha_by_enumeration(const FeedbackGraph& g) {
    int k = g.num_actions();
    std::vector<unsigned> nbr(k, 0);
    for (auto [a, b] : g.edges()) {
        nbr[a] |= 1u << b;
        nbr[b] |= 1u << a;
    }
    int best = 0;
    for (unsigned s = 0; s < (1u << k); ++s) {
        bool ok = true;
        int size = 0;
        for (int v = 0; v < k && ok; ++v) {
            if (!((s >> v) & 1u)) continue;
            ++size;
            if (nbr[v] & s) ok = false;
        }
        if (ok) best = std::max(best, size);
    }
    return best;
}

} // namespace

TEST_CASE("observation set: edgeless graph only sees itself") {
    FeedbackGraph g = FeedbackGraph::edgeless(3);
    ObservationSet s = observation_set(g, 1);
    CHECK(s.action == 1);
    CHECK(s.members == std::vector<int>{1});
}

TEST_CASE("observation set: complete graph sees everyone") {
    FeedbackGraph g = FeedbackGraph::complete(3);
    ObservationSet s = observation_set(g, 0);
    CHECK(s.members == std::vector<int>{0, 1, 2});
}

TEST_CASE("observation set: directed edge is one-way") {
    FeedbackGraph g(2, false, {{0, 1}});
    CHECK(observation_set(g, 0).members == std::vector<int>{0, 1});
    CHECK(observation_set(g, 1).members == std::vector<int>{1});
}

TEST_CASE("observation set: out-of-range action") {
    FeedbackGraph g = FeedbackGraph::edgeless(3);
    CHECK_THROWS(observation_set(g, 3));
    CHECK_THROWS(observation_set(g, -1));
}

TEST_CASE("observation probabilities: edgeless keeps pi") {
    FeedbackGraph g = FeedbackGraph::edgeless(4);
    Vec q = observation_probabilities(g, {0.25, 0.25, 0.25, 0.25});
    for (double v : q) CHECK(v == doctest::Approx(0.25));
}

TEST_CASE("observation probabilities: complete graph gives ones") {
    FeedbackGraph g = FeedbackGraph::complete(4);
    Vec q = observation_probabilities(g, {0.1, 0.2, 0.3, 0.4});
    for (double v : q) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("observation probabilities: directed hand case") {
    FeedbackGraph g(2, false, {{0, 1}});
    Vec q = observation_probabilities(g, {0.5, 0.5});
    CHECK(q[0] == doctest::Approx(0.5));
    CHECK(q[1] == doctest::Approx(1.0));
}

TEST_CASE("observation probabilities: input validation") {
    FeedbackGraph g = FeedbackGraph::edgeless(3);
    CHECK_THROWS(observation_probabilities(g, {0.5, 0.5}));        // dimension
    CHECK_THROWS(observation_probabilities(g, {0.5, 0.4, 0.2}));   // sum
    CHECK_THROWS(observation_probabilities(g, {1.2, -0.1, -0.1})); // negative
}

TEST_CASE("observation probabilities: q >= pi, sums to at least 1, capped on undirected") {
    Prng rng(11, 0, StreamTag::kContext);
    for (int n = 0; n < 50; ++n) {
        int k = 2 + static_cast<int>(rng.next_u64() % 9);
        bool undirected = rng.next_double() < 0.5;
        FeedbackGraph g = random_graph(k, undirected, rng.next_double(), rng);
        Vec pi = random_simplex(k, rng);
        Vec q = observation_probabilities(g, pi);
        double sum = 0.0;
        for (int i = 0; i < k; ++i) {
            CHECK(q[i] >= pi[i]);
            if (undirected) CHECK(q[i] <= 1.0 + 1e-12);
            sum += q[i];
        }
        CHECK(sum >= 1.0 - 1e-10);
    }
}

TEST_CASE("independence number: known graphs") {
    CHECK(independence_number_exact(FeedbackGraph::edgeless(7)) == 7);
    CHECK(independence_number_exact(FeedbackGraph::complete_plus_isolated(9, 1)) == 2);
    FeedbackGraph cycle(5, true, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    CHECK(independence_number_exact(cycle) == 2);
    CHECK(alpha_by_enumeration(cycle) == 2);
}

TEST_CASE("independence number: directed edges connect in either direction") {
    FeedbackGraph g(3, false, {{0, 1}, {2, 1}});
    CHECK(independence_number_exact(g) == 2); // {0, 2}
}

TEST_CASE("independence number: exact solver matches enumeration on random graphs") {
    Prng rng(12, 0, StreamTag::kContext);
    for (int n = 0; n < 100; ++n) {
        int k = 2 + static_cast<int>(rng.next_u64() % 11);
        FeedbackGraph g = random_graph(k, rng.next_double() < 0.5, rng.next_double(), rng);
        CHECK(independence_number_exact(g) == alpha_by_enumeration(g));
    }
}

TEST_CASE("independence number: exact search refuses large K") {
    CHECK_THROWS(independence_number_exact(FeedbackGraph::edgeless(26)));
}

TEST_CASE("greedy bound: trivial cases and domination") {
    CHECK(independence_number_greedy_bound(FeedbackGraph::edgeless(7)) == 7);
    int complete5 = independence_number_greedy_bound(FeedbackGraph::complete(5));
    CHECK(complete5 >= 1);
    CHECK(complete5 <= 5);
    int benchmark = independence_number_greedy_bound(FeedbackGraph::complete_plus_isolated(9, 1));
    CHECK(benchmark >= 2);
    CHECK(benchmark <= 10);

    Prng rng(13, 0, StreamTag::kContext);
    for (int n = 0; n < 200; ++n) {
        int k = 2 + static_cast<int>(rng.next_u64() % 11);
        FeedbackGraph g = random_graph(k, rng.next_double() < 0.5, rng.next_double(), rng);
        CHECK(independence_number_greedy_bound(g) >= independence_number_exact(g));
    }
}

TEST_CASE("graph construction: invariants") {
    CHECK_THROWS(FeedbackGraph(3, true, {{0, 0}})); // self-loop
    CHECK_THROWS(FeedbackGraph(3, true, {{0, 3}})); // out of range

    FeedbackGraph g(3, true, {{0, 1}});
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0)); // symmetrized
    CHECK(g.num_edges() == 2);

    FeedbackGraph d(3, false, {{0, 1}});
    CHECK(d.has_edge(0, 1));
    CHECK_FALSE(d.has_edge(1, 0));
}

TEST_CASE("graph hash: stable and edge-sensitive") {
    FeedbackGraph a(3, true, {{0, 1}});
    FeedbackGraph b(3, true, {{1, 0}});
    FeedbackGraph c(3, true, {{0, 2}});
    CHECK(a.hash() == b.hash()); // same symmetrized edge set
    CHECK(a.hash() != c.hash());
    CHECK(a.hash() != a.without_edges().hash());
}
