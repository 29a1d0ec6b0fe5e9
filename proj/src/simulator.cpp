#include "lgcb/simulator.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace lgcb {

bool RoundRecord::operator==(const RoundRecord& other) const {
    return t == other.t && context == other.context && policy == other.policy &&
           action == other.action && realized_loss == other.realized_loss &&
           observation_set.action == other.observation_set.action &&
           observation_set.members == other.observation_set.members &&
           oracle_context == other.oracle_context && oracle_losses == other.oracle_losses &&
           q == other.q && graph_hash == other.graph_hash;
}

RoundRecord run_round(Agent& agent, const TrialEnvironment& env, std::int64_t t,
                      InteractionHistory& history) {
    try {
        const Adversary& adversary = *env.adversary;
        const ContextDistribution& dist = *env.dist;

        // Adversary commit: graph and loss vectors exist before the context
        // is revealed, but reach the agent only below. static_graph is
        // already stripped for variants that ignore side observations.
        FeedbackGraph round_graph = [&] {
            if (env.static_graph) return *env.static_graph;
            Prng graph_rng(env.seed, static_cast<std::uint64_t>(t),
                           StreamTag::kGraph);
            FeedbackGraph g = adversary.graph(t, history, graph_rng);
            return env.use_side_observations ? g : g.without_edges();
        }();
        std::vector<Vec> theta = adversary.losses(t, history);

        Prng context_rng(env.seed, static_cast<std::uint64_t>(t), StreamTag::kContext);
        Vec context = dist.sample(context_rng);

        Prng action_rng(env.seed, static_cast<std::uint64_t>(t), StreamTag::kAction);
        AgentStep step = agent.step(context, action_rng);

        RoundRecord record;
        record.t = t;
        record.context = context;
        record.policy = step.policy;
        record.action = step.action;
        record.realized_loss = dot(context, theta[step.action]);
        record.observation_set = observation_set(round_graph, step.action);
        record.graph_hash = round_graph.hash();

        Prng oracle_rng(env.seed, static_cast<std::uint64_t>(t), StreamTag::kOracleContext);
        OracleDraw oracle = oracle_draw(dist, adversary, t, history, record.observation_set,
                                        oracle_rng);
        record.oracle_context = oracle.context;
        record.oracle_losses = oracle.losses;

        // Graph disclosure happens here, after the decision.
        record.q = agent.update(round_graph, record.observation_set, oracle);

        history.contexts.push_back(record.context);
        history.actions.push_back(record.action);
        history.realized_losses.push_back(record.realized_loss);
        return record;
    } catch (const std::exception& e) {
        throw std::runtime_error("round " + std::to_string(t) + ": " + e.what());
    }
}

namespace {

void write_double(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

void write_vec(std::ostream& out, const Vec& v) {
    out << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ',';
        write_double(out, v[i]);
    }
    out << ']';
}

} // namespace

void write_trace_jsonl(const Trace& trace, std::ostream& out) {
    for (const RoundRecord& r : trace.records) {
        out << "{\"t\":" << r.t << ",\"context\":";
        write_vec(out, r.context);
        out << ",\"policy\":";
        write_vec(out, r.policy);
        out << ",\"action\":" << r.action + 1 << ",\"realized_loss\":";
        write_double(out, r.realized_loss);
        out << ",\"observation_set\":[";
        for (std::size_t i = 0; i < r.observation_set.members.size(); ++i) {
            if (i) out << ',';
            out << r.observation_set.members[i] + 1;
        }
        out << "],\"oracle_context\":";
        write_vec(out, r.oracle_context);
        out << ",\"oracle_losses\":{";
        bool first = true;
        for (const auto& [action, loss] : r.oracle_losses) {
            if (!first) out << ',';
            first = false;
            out << '"' << action + 1 << "\":";
            write_double(out, loss);
        }
        out << "},\"q\":";
        write_vec(out, r.q);
        out << ",\"graph_hash\":" << r.graph_hash << "}\n";
    }
}

} // namespace lgcb
