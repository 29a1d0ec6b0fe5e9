#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lgcb/adversary.hpp"
#include "lgcb/algorithms.hpp"
#include "lgcb/context.hpp"
#include "lgcb/graph.hpp"

namespace lgcb {

// Full transcript of one round.
struct RoundRecord {
    std::int64_t t = 0;
    Vec context;
    PolicyVector policy;
    int action = 0;
    double realized_loss = 0.0;
    ObservationSet observation_set;
    Vec oracle_context;
    std::map<int, double> oracle_losses;
    Vec q; // per-action observation probabilities
    std::uint64_t graph_hash = 0;

    bool operator==(const RoundRecord& other) const;
};

struct Trace {
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    std::vector<RoundRecord> records;
    Vec cumulative_loss; // prefix sums of realized losses

    bool operator==(const Trace& other) const {
        return records == other.records && cumulative_loss == other.cumulative_loss;
    }
};

// Everything run_round needs besides the agent: the environment and the
// per-trial resolution of the algorithm variant (whether side observations
// are stripped, and the cached static graph when the source is not
// per-round).
struct TrialEnvironment {
    const Adversary* adversary = nullptr;
    const ContextDistribution* dist = nullptr;
    std::uint64_t seed = 0;
    bool use_side_observations = true;
    std::optional<FeedbackGraph> static_graph; // engaged unless per-round source
};

// Runs the full protocol for round t: adversary commit, context draw,
// action, observation, graph disclosure, oracle draw, estimate update.
// Appends the disclosed quantities to the history. Errors from
// sub-operations are rethrown with the round index attached.
RoundRecord run_round(Agent& agent, const TrialEnvironment& env, std::int64_t t,
                      InteractionHistory& history);

// One record per line, JSON; field names match RoundRecord.
void write_trace_jsonl(const Trace& trace, std::ostream& out);

} // namespace lgcb
