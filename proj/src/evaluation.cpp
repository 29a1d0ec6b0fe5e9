#include "lgcb/evaluation.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace lgcb {

BenchmarkPolicy::BenchmarkPolicy(Matrix cumulative_theta,
                                 std::shared_ptr<const Adversary> adversary)
    : cumulative_theta_(std::move(cumulative_theta)), adversary_(std::move(adversary)) {}

int BenchmarkPolicy::decision(const Vec& context) const {
    if (context.size() != static_cast<std::size_t>(cumulative_theta_.cols()))
        throw std::invalid_argument("BenchmarkPolicy: context dimension mismatch");
    int best = 0;
    double best_value = 0.0;
    for (int j = 0; j < cumulative_theta_.rows(); ++j) {
        double v = 0.0;
        for (int c = 0; c < cumulative_theta_.cols(); ++c) v += context[c] * cumulative_theta_(j, c);
        if (j == 0 || v < best_value) {
            best = j;
            best_value = v;
        }
    }
    return best;
}

BenchmarkPolicy build_benchmark(std::shared_ptr<const Adversary> adversary, std::int64_t horizon) {
    if (!adversary->oblivious())
        throw std::invalid_argument(
            "build_benchmark: the benchmark is undefined for a nonoblivious adversary");
    int k = adversary->num_actions();
    int d = adversary->dimension();
    Matrix cumulative(k, d);
    InteractionHistory empty;
    for (std::int64_t t = 1; t <= horizon; ++t) {
        std::vector<Vec> theta = adversary->losses(t, empty);
        for (int j = 0; j < k; ++j)
            for (int c = 0; c < d; ++c) cumulative(j, c) += theta[j][c];
    }
    return BenchmarkPolicy(std::move(cumulative), std::move(adversary));
}

RegretCurve regret_curve(const Trace& trace, const BenchmarkPolicy& benchmark) {
    const Adversary& adversary = benchmark.adversary();
    if (benchmark.cumulative_theta().rows() != adversary.num_actions())
        throw std::logic_error("regret_curve: benchmark/adversary mismatch");
    RegretCurve curve;
    curve.values.reserve(trace.records.size());
    InteractionHistory empty;
    double total = 0.0;
    for (const RoundRecord& r : trace.records) {
        std::vector<Vec> theta = adversary.losses(r.t, empty);
        int best = benchmark.decision(r.context);
        total += r.realized_loss - dot(r.context, theta[best]);
        curve.values.push_back(total);
    }
    return curve;
}

AggregateCurve aggregate(const std::vector<RegretCurve>& curves) {
    if (curves.empty()) throw std::invalid_argument("aggregate: no curves");
    std::size_t len = curves.front().values.size();
    for (const RegretCurve& c : curves)
        if (c.values.size() != len) throw std::invalid_argument("aggregate: length mismatch");

    AggregateCurve out;
    out.trials = static_cast<int>(curves.size());
    out.mean.assign(len, 0.0);
    out.stddev.assign(len, 0.0);
    for (std::size_t t = 0; t < len; ++t) {
        double sum = 0.0;
        for (const RegretCurve& c : curves) sum += c.values[t];
        out.mean[t] = sum / out.trials;
    }
    if (out.trials > 1) {
        for (std::size_t t = 0; t < len; ++t) {
            double ss = 0.0;
            for (const RegretCurve& c : curves) {
                double d = c.values[t] - out.mean[t];
                ss += d * d;
            }
            out.stddev[t] = std::sqrt(ss / (out.trials - 1));
        }
    }
    return out;
}

std::vector<std::int64_t> checkpoint_rounds(std::int64_t horizon, std::int64_t stride) {
    if (horizon < 1) throw std::invalid_argument("checkpoint_rounds: horizon must be >= 1");
    if (stride <= 0) stride = std::max<std::int64_t>(1, horizon / 100);
    std::vector<std::int64_t> rounds;
    for (std::int64_t r = stride; r <= horizon; r += stride) rounds.push_back(r);
    if (rounds.empty() || rounds.back() != horizon) rounds.push_back(horizon);
    return rounds;
}

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void check_result_shapes(const std::vector<std::string>& names,
                         const std::vector<AggregateCurve>& curves,
                         const std::vector<std::int64_t>& checkpoints) {
    if (names.size() != curves.size())
        throw std::invalid_argument("results: names/curves size mismatch");
    for (const AggregateCurve& c : curves)
        for (std::int64_t r : checkpoints)
            if (r < 1 || static_cast<std::size_t>(r) > c.mean.size())
                throw std::invalid_argument("results: checkpoint outside curve");
}

} // namespace

void write_results_csv(std::ostream& out, const std::vector<std::string>& algorithm_names,
                       const std::vector<AggregateCurve>& curves,
                       const std::vector<std::int64_t>& checkpoints) {
    check_result_shapes(algorithm_names, curves, checkpoints);
    out << "round,algorithm,mean_regret,std_regret,trials\n";
    for (std::size_t a = 0; a < curves.size(); ++a) {
        for (std::int64_t r : checkpoints) {
            std::size_t i = static_cast<std::size_t>(r) - 1;
            out << r << ',' << algorithm_names[a] << ',' << format_double(curves[a].mean[i])
                << ',' << format_double(curves[a].stddev[i]) << ',' << curves[a].trials << '\n';
        }
    }
}

void write_results_jsonl(std::ostream& out, const std::vector<std::string>& algorithm_names,
                         const std::vector<AggregateCurve>& curves,
                         const std::vector<std::int64_t>& checkpoints) {
    check_result_shapes(algorithm_names, curves, checkpoints);
    for (std::size_t a = 0; a < curves.size(); ++a) {
        for (std::int64_t r : checkpoints) {
            std::size_t i = static_cast<std::size_t>(r) - 1;
            out << "{\"round\":" << r << ",\"algorithm\":\"" << algorithm_names[a]
                << "\",\"mean_regret\":" << format_double(curves[a].mean[i])
                << ",\"std_regret\":" << format_double(curves[a].stddev[i])
                << ",\"trials\":" << curves[a].trials << "}\n";
        }
    }
}

} // namespace lgcb
