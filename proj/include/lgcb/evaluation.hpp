#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "lgcb/adversary.hpp"
#include "lgcb/linalg.hpp"
#include "lgcb/simulator.hpp"

namespace lgcb {

// The best fixed context-to-action policy in hindsight: row j of
// cumulative_theta is the sum over rounds of theta_{j,t}, and the decision
// on x is the argmin of <x, row_j>, ties to the lowest index.
class BenchmarkPolicy {
public:
    BenchmarkPolicy(Matrix cumulative_theta, std::shared_ptr<const Adversary> adversary);

    int decision(const Vec& context) const;
    const Matrix& cumulative_theta() const { return cumulative_theta_; }
    const Adversary& adversary() const { return *adversary_; }

private:
    Matrix cumulative_theta_; // K x d
    std::shared_ptr<const Adversary> adversary_;
};

// Requires an oblivious adversary (the expected loss table must be
// computable without agent actions).
BenchmarkPolicy build_benchmark(std::shared_ptr<const Adversary> adversary, std::int64_t horizon);

struct RegretCurve {
    Vec values; // cumulative benchmark-relative loss, one entry per round
};

// Prefix sums of per-round loss gaps against the benchmark action on the
// recorded realized contexts.
RegretCurve regret_curve(const Trace& trace, const BenchmarkPolicy& benchmark);

struct AggregateCurve {
    Vec mean;
    Vec stddev; // sample (n-1) estimator; zero when a single trial
    int trials = 0;
};

AggregateCurve aggregate(const std::vector<RegretCurve>& curves);

// Checkpoint rounds for result files: stride, 2*stride, ..., always
// including the horizon. stride <= 0 picks horizon/100.
std::vector<std::int64_t> checkpoint_rounds(std::int64_t horizon, std::int64_t stride);

// CSV rows `round,algorithm,mean_regret,std_regret,trials`, algorithms in
// the given order, checkpoints ascending within each algorithm.
void write_results_csv(std::ostream& out, const std::vector<std::string>& algorithm_names,
                       const std::vector<AggregateCurve>& curves,
                       const std::vector<std::int64_t>& checkpoints);

// Same rows as JSON-lines.
void write_results_jsonl(std::ostream& out, const std::vector<std::string>& algorithm_names,
                         const std::vector<AggregateCurve>& curves,
                         const std::vector<std::int64_t>& checkpoints);

} // namespace lgcb
