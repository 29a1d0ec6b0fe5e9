#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "lgcb/evaluation.hpp"
#include "lgcb/experiment.hpp"

using namespace lgcb;

namespace {

// Constant loss table: theta_{j,t} = c_j * ones(d).
std::shared_ptr<const Adversary> constant_adversary(Vec constants, int d, std::int64_t horizon,
                                                    double sigma = 1.0) {
    std::vector<std::vector<Vec>> table(static_cast<std::size_t>(horizon));
    for (auto& round : table)
        for (double c : constants) round.push_back(Vec(d, c));
    return std::make_shared<TableAdversary>(std::move(table), GraphSpec{}, sigma);
}

} // namespace

TEST_CASE("benchmark: constant losses pick the smallest coefficient") {
    auto adversary = constant_adversary({0.3, 0.1, 0.2}, 2, 4);
    BenchmarkPolicy benchmark = build_benchmark(adversary, 4);
    CHECK(benchmark.decision({0.5, 0.5}) == 1);
    CHECK(benchmark.decision({0.0, 0.1}) == 1);
}

TEST_CASE("benchmark: zero losses tie to the lowest index") {
    auto adversary = constant_adversary({0.0, 0.0, 0.0}, 2, 3);
    BenchmarkPolicy benchmark = build_benchmark(adversary, 3);
    CHECK(benchmark.decision({0.7, 0.2}) == 0);
}

TEST_CASE("benchmark: sudden-change adversary always picks action 1") {
    ExperimentConfig config = resolve_config("paper_fig2");
    config.horizon = 200;
    config.adversary.change_point = 100;
    BenchmarkPolicy benchmark = build_benchmark(make_adversary(config), config.horizon);
    // Any nonzero nonnegative context prefers the smallest 1-based index.
    CHECK(benchmark.decision(Vec(10, 1.0 / std::sqrt(10.0))) == 0);
    Vec sparse(10, 0.0);
    sparse[3] = 1.0 / std::sqrt(10.0);
    CHECK(benchmark.decision(sparse) == 0);
    // Zero context ties; lowest index wins.
    CHECK(benchmark.decision(Vec(10, 0.0)) == 0);
}

TEST_CASE("benchmark: positive scaling leaves decisions unchanged") {
    auto adversary = constant_adversary({0.05, 0.2, 0.1}, 3, 5);
    auto scaled = constant_adversary({0.1, 0.4, 0.2}, 3, 5);
    BenchmarkPolicy a = build_benchmark(adversary, 5);
    BenchmarkPolicy b = build_benchmark(scaled, 5);
    Prng rng(41, 0, StreamTag::kContext);
    for (int n = 0; n < 50; ++n) {
        Vec x(3);
        for (double& c : x) c = rng.next_double();
        CHECK(a.decision(x) == b.decision(x));
    }
}

TEST_CASE("regret curve: agent matching the benchmark has zero regret") {
    // K=1: the only policy IS the benchmark.
    ExperimentConfig config = parse_config_text(R"({
      "K": 1, "d": 2, "T": 6,
      "adversary": {"kind": "sudden_change_synthetic", "scale_first": 0.5, "scale_second": 0.2},
      "graph": {"type": "edgeless"},
      "algorithms": [{"name": "exp3-lgc-u"}]
    })");
    Trace trace = run_trial(config, 0, 1);
    BenchmarkPolicy benchmark = build_benchmark(make_adversary(config), config.horizon);
    RegretCurve curve = regret_curve(trace, benchmark);
    for (double v : curve.values) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("regret curve: hand-built two-action gap") {
    // Action 0 costs 0.1 per unit context, action 1 costs 0.3: the gap per
    // round is 0.2 * <x, 1>.
    std::int64_t horizon = 4;
    auto adversary = constant_adversary({0.1, 0.3}, 1, horizon);
    BenchmarkPolicy benchmark = build_benchmark(adversary, horizon);

    Trace trace;
    double gap_sum = 0.0;
    for (std::int64_t t = 1; t <= horizon; ++t) {
        RoundRecord r;
        r.t = t;
        r.context = {1.0};
        r.action = 1;
        r.realized_loss = 0.3;
        trace.records.push_back(r);
        gap_sum += 0.2;
    }
    RegretCurve curve = regret_curve(trace, benchmark);
    CHECK(curve.values.back() == doctest::Approx(gap_sum).epsilon(1e-12));
    CHECK(curve.values.front() == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("aggregate: single curve, pair of curves, random batch") {
    RegretCurve a{{1.0, 2.0, 3.0}};
    AggregateCurve single = aggregate({a});
    CHECK(single.mean == a.values);
    CHECK(single.stddev == Vec{0.0, 0.0, 0.0});
    CHECK(single.trials == 1);

    RegretCurve b{{3.0, 4.0, 5.0}};
    AggregateCurve pair = aggregate({a, b});
    CHECK(pair.mean == Vec{2.0, 3.0, 4.0});
    // sample std of {1,3} is sqrt(2)
    CHECK(pair.stddev[0] == doctest::Approx(std::sqrt(2.0)));

    Prng rng(42, 0, StreamTag::kContext);
    std::vector<RegretCurve> batch(100);
    Vec expected(5, 0.0);
    for (RegretCurve& c : batch) {
        c.values.resize(5);
        for (std::size_t i = 0; i < 5; ++i) {
            c.values[i] = rng.next_double();
            expected[i] += c.values[i] / 100.0;
        }
    }
    AggregateCurve agg = aggregate(batch);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(agg.mean[i] == doctest::Approx(expected[i]).epsilon(1e-12));

    CHECK_THROWS(aggregate({}));
    CHECK_THROWS(aggregate({a, RegretCurve{{1.0}}}));
}

TEST_CASE("nonoblivious adversary is rejected by the benchmark") {
    // A minimal adversary that claims to be nonoblivious.
    class Nonoblivious : public Adversary {
    public:
        int num_actions() const override { return 2; }
        int dimension() const override { return 1; }
        std::int64_t horizon() const override { return 3; }
        bool oblivious() const override { return false; }
        bool per_round_graph() const override { return false; }
        std::vector<Vec> losses(std::int64_t, const InteractionHistory&) const override {
            return {{0.0}, {0.0}};
        }
        FeedbackGraph graph(std::int64_t, const InteractionHistory&, Prng&) const override {
            return FeedbackGraph::edgeless(2);
        }
    };
    CHECK_THROWS(build_benchmark(std::make_shared<Nonoblivious>(), 3));
}

TEST_CASE("checkpoints: stride defaults and the horizon is always present") {
    std::vector<std::int64_t> def = checkpoint_rounds(20000, 0);
    CHECK(def.size() == 100);
    CHECK(def.front() == 200);
    CHECK(def.back() == 20000);

    std::vector<std::int64_t> coarse = checkpoint_rounds(10, 3);
    CHECK(coarse == std::vector<std::int64_t>{3, 6, 9, 10});

    std::vector<std::int64_t> tiny = checkpoint_rounds(3, 0);
    CHECK(tiny == std::vector<std::int64_t>{1, 2, 3});
}

TEST_CASE("results csv: schema and layout") {
    AggregateCurve curve;
    curve.mean = {0.5, 1.0, 1.5, 2.0};
    curve.stddev = {0.0, 0.1, 0.2, 0.3};
    curve.trials = 7;
    std::ostringstream out;
    write_results_csv(out, {"exp3-lgc-u"}, {curve}, {2, 4});
    CHECK(out.str() ==
          "round,algorithm,mean_regret,std_regret,trials\n"
          "2,exp3-lgc-u,1,0.1,7\n"
          "4,exp3-lgc-u,2,0.3,7\n");

    std::ostringstream jsonl;
    write_results_jsonl(jsonl, {"exp3-lgc-u"}, {curve}, {4});
    CHECK(jsonl.str() ==
          "{\"round\":4,\"algorithm\":\"exp3-lgc-u\",\"mean_regret\":2,"
          "\"std_regret\":0.3,\"trials\":7}\n");
}
