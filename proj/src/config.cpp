#include "lgcb/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lgcb/algorithms.hpp"

namespace lgcb {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw std::invalid_argument("config: " + path + ": " + message);
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> known) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (ok) continue;
        std::string best;
        std::size_t best_distance = 4; // suggest only close misses
        for (const char* k : known) {
            std::size_t d = edit_distance(key, k);
            if (d < best_distance) {
                best_distance = d;
                best = k;
            }
        }
        std::string message = "unknown key \"" + key + "\"";
        if (!best.empty()) {
            message += "; did you mean \"" + best + "\"?";
        } else {
            message += "; valid keys:";
            for (const char* k : known) message += std::string(" ") + k;
        }
        fail(path, message);
    }
}

const json& require(const json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing required field \"") + key + "\"");
    return *it;
}

std::int64_t as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<std::int64_t>();
}

double as_double(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& path) {
    if (!v.is_boolean()) fail(path, "expected a boolean");
    return v.get<bool>();
}

Vec as_vector(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array of numbers");
    Vec out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(as_double(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

ContextSection parse_context(const json& obj, const std::string& path) {
    check_keys(obj, path, {"kind", "p", "points", "probabilities"});
    ContextSection section;
    std::string kind = as_string(require(obj, path, "kind"), path + ".kind");
    if (kind == "bernoulli_scaled") {
        section.kind = ContextKind::kBernoulliScaled;
        if (obj.contains("points") || obj.contains("probabilities"))
            fail(path, "points/probabilities apply only to custom_discrete");
        if (obj.contains("p")) section.p = as_double(obj["p"], path + ".p");
        if (section.p < 0.0 || section.p > 1.0) fail(path + ".p", "must be in [0,1]");
    } else if (kind == "custom_discrete") {
        section.kind = ContextKind::kCustomDiscrete;
        if (obj.contains("p")) fail(path + ".p", "applies only to bernoulli_scaled");
        const json& points = require(obj, path, "points");
        if (!points.is_array() || points.empty()) fail(path + ".points", "expected a nonempty array");
        for (std::size_t i = 0; i < points.size(); ++i)
            section.points.push_back(
                as_vector(points[i], path + ".points[" + std::to_string(i) + "]"));
        section.probabilities =
            as_vector(require(obj, path, "probabilities"), path + ".probabilities");
    } else {
        fail(path + ".kind", "unknown kind \"" + kind +
                                 "\"; known: bernoulli_scaled, custom_discrete");
    }
    return section;
}

AdversarySection parse_adversary(const json& obj, const std::string& path) {
    check_keys(obj, path,
               {"kind", "change_point", "scale_first", "scale_second", "loss_table"});
    AdversarySection section;
    std::string kind = as_string(require(obj, path, "kind"), path + ".kind");
    if (kind == "sudden_change_synthetic") {
        section.kind = AdversarySection::Kind::kSuddenChangeSynthetic;
        if (obj.contains("loss_table")) fail(path + ".loss_table", "applies only to custom_oblivious");
        if (obj.contains("change_point")) {
            std::int64_t cp = as_int(obj["change_point"], path + ".change_point");
            if (cp < 0) fail(path + ".change_point", "must be >= 0");
            section.change_point = cp;
        }
        if (obj.contains("scale_first"))
            section.scale_first = as_double(obj["scale_first"], path + ".scale_first");
        if (obj.contains("scale_second"))
            section.scale_second = as_double(obj["scale_second"], path + ".scale_second");
        if (section.scale_first < 0.0) fail(path + ".scale_first", "must be >= 0");
        if (section.scale_second < 0.0) fail(path + ".scale_second", "must be >= 0");
    } else if (kind == "custom_oblivious") {
        section.kind = AdversarySection::Kind::kCustomOblivious;
        if (obj.contains("change_point") || obj.contains("scale_first") ||
            obj.contains("scale_second"))
            fail(path, "change_point/scales apply only to sudden_change_synthetic");
        const json& table = require(obj, path, "loss_table");
        if (!table.is_array() || table.empty()) fail(path + ".loss_table", "expected a nonempty array");
        for (std::size_t t = 0; t < table.size(); ++t) {
            const json& round = table[t];
            std::string round_path = path + ".loss_table[" + std::to_string(t) + "]";
            if (!round.is_array()) fail(round_path, "expected an array of loss vectors");
            std::vector<Vec> vectors;
            for (std::size_t i = 0; i < round.size(); ++i)
                vectors.push_back(as_vector(round[i], round_path + "[" + std::to_string(i) + "]"));
            section.loss_table.push_back(std::move(vectors));
        }
    } else {
        fail(path + ".kind", "unknown kind \"" + kind +
                                 "\"; known: sudden_change_synthetic, custom_oblivious");
    }
    return section;
}

GraphSpec parse_graph(const json& obj, const std::string& path, int num_actions) {
    check_keys(obj, path, {"type", "clique", "isolated", "directed", "edges", "p", "per_round"});
    GraphSpec spec;
    std::string type = as_string(require(obj, path, "type"), path + ".type");
    auto forbid = [&](const char* key, const char* reason) {
        if (obj.contains(key)) fail(path + "." + key, reason);
    };
    if (type == "edgeless") {
        spec.type = GraphSpec::Type::kEdgeless;
    } else if (type == "complete") {
        spec.type = GraphSpec::Type::kComplete;
    } else if (type == "complete_plus_isolated") {
        spec.type = GraphSpec::Type::kCompletePlusIsolated;
        spec.clique = static_cast<int>(as_int(require(obj, path, "clique"), path + ".clique"));
        spec.isolated =
            static_cast<int>(as_int(require(obj, path, "isolated"), path + ".isolated"));
        if (spec.clique < 1) fail(path + ".clique", "must be >= 1");
        if (spec.isolated < 0) fail(path + ".isolated", "must be >= 0");
        if (spec.clique + spec.isolated != num_actions)
            fail(path, "clique + isolated must equal K=" + std::to_string(num_actions));
    } else if (type == "explicit") {
        spec.type = GraphSpec::Type::kExplicit;
        spec.directed = as_bool(require(obj, path, "directed"), path + ".directed");
        const json& edges = require(obj, path, "edges");
        if (!edges.is_array()) fail(path + ".edges", "expected an array of [i,j] pairs");
        for (std::size_t e = 0; e < edges.size(); ++e) {
            std::string edge_path = path + ".edges[" + std::to_string(e) + "]";
            if (!edges[e].is_array() || edges[e].size() != 2)
                fail(edge_path, "expected a pair [i,j]");
            std::int64_t i = as_int(edges[e][0], edge_path);
            std::int64_t j = as_int(edges[e][1], edge_path);
            if (i < 1 || i > num_actions || j < 1 || j > num_actions)
                fail(edge_path, "endpoints must be 1-based action indices in [1," +
                                    std::to_string(num_actions) + "]");
            if (i == j) fail(edge_path, "self-loops are implicit and not allowed");
            spec.edges.push_back({static_cast<int>(i - 1), static_cast<int>(j - 1)});
        }
    } else if (type == "erdos_renyi") {
        spec.type = GraphSpec::Type::kErdosRenyi;
        spec.edge_probability = as_double(require(obj, path, "p"), path + ".p");
        if (spec.edge_probability < 0.0 || spec.edge_probability > 1.0)
            fail(path + ".p", "must be in [0,1]");
        spec.directed = as_bool(require(obj, path, "directed"), path + ".directed");
        if (obj.contains("per_round"))
            spec.per_round = as_bool(obj["per_round"], path + ".per_round");
        forbid("clique", "applies only to complete_plus_isolated");
    } else {
        fail(path + ".type",
             "unknown type \"" + type +
                 "\"; known: edgeless, complete, complete_plus_isolated, explicit, erdos_renyi");
    }
    if (type != "complete_plus_isolated") {
        forbid("clique", "applies only to complete_plus_isolated");
        forbid("isolated", "applies only to complete_plus_isolated");
    }
    if (type != "explicit" && type != "erdos_renyi")
        forbid("directed", "applies only to explicit/erdos_renyi");
    if (type != "erdos_renyi") {
        forbid("p", "applies only to erdos_renyi");
        forbid("per_round", "applies only to erdos_renyi");
    }
    if (type != "explicit") forbid("edges", "applies only to explicit");
    return spec;
}

AlgorithmConfig parse_algorithm(const json& obj, const std::string& path) {
    check_keys(obj, path, {"name", "eta", "gamma", "alpha_bounds"});
    AlgorithmConfig algo;
    algo.selector = as_string(require(obj, path, "name"), path + ".name");
    try {
        parse_algorithm_selector(algo.selector);
    } catch (const std::exception& e) {
        fail(path + ".name", e.what());
    }
    if (obj.contains("eta")) {
        algo.eta = as_double(obj["eta"], path + ".eta");
        if (!(*algo.eta > 0.0)) fail(path + ".eta", "must be positive");
    }
    if (obj.contains("gamma")) {
        algo.gamma = as_double(obj["gamma"], path + ".gamma");
        if (!(*algo.gamma >= 0.0) || *algo.gamma >= 1.0) fail(path + ".gamma", "must be in [0,1)");
    }
    if (obj.contains("alpha_bounds")) {
        const json& bounds = obj["alpha_bounds"];
        if (bounds.is_string()) {
            if (bounds.get<std::string>() != "exact")
                fail(path + ".alpha_bounds", "expected \"exact\" or a number >= 1");
            algo.alpha_exact = true;
        } else {
            double value = as_double(bounds, path + ".alpha_bounds");
            if (!(value >= 1.0)) fail(path + ".alpha_bounds", "fixed bound must be >= 1");
            algo.alpha_exact = false;
            algo.alpha_fixed = value;
        }
    }
    return algo;
}

OutputConfig parse_output(const json& obj, const std::string& path) {
    check_keys(obj, path, {"directory", "format", "checkpoint_stride", "dump_traces"});
    OutputConfig output;
    if (obj.contains("directory"))
        output.directory = as_string(obj["directory"], path + ".directory");
    if (obj.contains("format")) {
        output.format = as_string(obj["format"], path + ".format");
        if (output.format != "csv" && output.format != "jsonl")
            fail(path + ".format", "expected \"csv\" or \"jsonl\"");
    }
    if (obj.contains("checkpoint_stride")) {
        output.checkpoint_stride = as_int(obj["checkpoint_stride"], path + ".checkpoint_stride");
        if (output.checkpoint_stride < 0) fail(path + ".checkpoint_stride", "must be >= 0");
    }
    if (obj.contains("dump_traces"))
        output.dump_traces = as_bool(obj["dump_traces"], path + ".dump_traces");
    return output;
}

} // namespace

ExperimentConfig parse_config_text(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: malformed JSON: ") + e.what());
    }
    if (!root.is_object()) throw std::invalid_argument("config: top level must be an object");
    check_keys(root, "config",
               {"K", "d", "T", "trials", "base_seed", "context", "adversary", "graph",
                "algorithms", "output"});

    ExperimentConfig config;
    config.num_actions = static_cast<int>(as_int(require(root, "config", "K"), "config.K"));
    if (config.num_actions < 1) fail("config.K", "must be >= 1");
    config.dimension = static_cast<int>(as_int(require(root, "config", "d"), "config.d"));
    if (config.dimension < 1) fail("config.d", "must be >= 1");
    config.horizon = as_int(require(root, "config", "T"), "config.T");
    if (config.horizon < 1) fail("config.T", "must be >= 1");
    if (root.contains("trials")) {
        config.trials = static_cast<int>(as_int(root["trials"], "config.trials"));
        if (config.trials < 1) fail("config.trials", "must be >= 1");
    }
    if (root.contains("base_seed")) {
        std::int64_t seed = as_int(root["base_seed"], "config.base_seed");
        if (seed < 0) fail("config.base_seed", "must be >= 0");
        config.base_seed = static_cast<std::uint64_t>(seed);
    }
    if (root.contains("context")) config.context = parse_context(root["context"], "config.context");
    if (root.contains("adversary"))
        config.adversary = parse_adversary(root["adversary"], "config.adversary");
    if (root.contains("graph"))
        config.graph = parse_graph(root["graph"], "config.graph", config.num_actions);

    const json& algorithms = require(root, "config", "algorithms");
    if (!algorithms.is_array() || algorithms.empty())
        fail("config.algorithms", "expected a nonempty array");
    for (std::size_t i = 0; i < algorithms.size(); ++i)
        config.algorithms.push_back(
            parse_algorithm(algorithms[i], "config.algorithms[" + std::to_string(i) + "]"));

    if (root.contains("output")) config.output = parse_output(root["output"], "config.output");

    // Cross-field checks that need the resolved shape.
    if (config.adversary.kind == AdversarySection::Kind::kCustomOblivious) {
        if (static_cast<std::int64_t>(config.adversary.loss_table.size()) < config.horizon)
            fail("config.adversary.loss_table",
                 "needs at least T=" + std::to_string(config.horizon) + " rounds");
        for (const auto& round : config.adversary.loss_table) {
            if (static_cast<int>(round.size()) != config.num_actions)
                fail("config.adversary.loss_table", "each round needs exactly K loss vectors");
            for (const Vec& theta : round)
                if (static_cast<int>(theta.size()) != config.dimension)
                    fail("config.adversary.loss_table", "each loss vector needs d entries");
        }
    }
    if (config.context.kind == ContextKind::kCustomDiscrete) {
        for (const Vec& point : config.context.points)
            if (static_cast<int>(point.size()) != config.dimension)
                fail("config.context.points", "points must have d entries");
    }
    return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open \"" + path + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

namespace {

const char* kPaperFig2 = R"json({
  "K": 10,
  "d": 10,
  "T": 100000,
  "trials": 100,
  "base_seed": 1,
  "context": {"kind": "bernoulli_scaled", "p": 0.5},
  "adversary": {"kind": "sudden_change_synthetic", "scale_first": 0.1, "scale_second": 0.05},
  "graph": {"type": "complete_plus_isolated", "clique": 9, "isolated": 1},
  "algorithms": [
    {"name": "exp3-lgc-u"},
    {"name": "exp3-lgc-u-star"},
    {"name": "exp3-lgc-ix"},
    {"name": "exp3-lgc-ix-star"}
  ],
  "output": {"format": "csv"}
})json";

const char* kSmoke = R"json({
  "K": 5,
  "d": 3,
  "T": 500,
  "trials": 2,
  "base_seed": 7,
  "context": {"kind": "bernoulli_scaled", "p": 0.5},
  "adversary": {"kind": "sudden_change_synthetic", "scale_first": 0.2, "scale_second": 0.1},
  "graph": {"type": "complete_plus_isolated", "clique": 4, "isolated": 1},
  "algorithms": [
    {"name": "exp3-lgc-u"},
    {"name": "exp3-lgc-ix"}
  ],
  "output": {"format": "csv"}
})json";

} // namespace

std::vector<std::string> preset_names() { return {"paper_fig2", "smoke"}; }

const char* preset_text(const std::string& name) {
    if (name == "paper_fig2") return kPaperFig2;
    if (name == "smoke") return kSmoke;
    return nullptr;
}

ExperimentConfig resolve_config(const std::string& path_or_preset) {
    std::ifstream probe(path_or_preset);
    if (probe.good()) return parse_config_file(path_or_preset);
    if (const char* text = preset_text(path_or_preset)) return parse_config_text(text);
    throw std::invalid_argument("config: \"" + path_or_preset +
                                "\" is neither a readable file nor a preset (presets: "
                                "paper_fig2, smoke)");
}

std::string config_to_json(const ExperimentConfig& config) {
    json root;
    root["K"] = config.num_actions;
    root["d"] = config.dimension;
    root["T"] = config.horizon;
    root["trials"] = config.trials;
    root["base_seed"] = config.base_seed;

    json context;
    if (config.context.kind == ContextKind::kBernoulliScaled) {
        context["kind"] = "bernoulli_scaled";
        context["p"] = config.context.p;
    } else {
        context["kind"] = "custom_discrete";
        context["points"] = config.context.points;
        context["probabilities"] = config.context.probabilities;
    }
    root["context"] = context;

    json adversary;
    if (config.adversary.kind == AdversarySection::Kind::kSuddenChangeSynthetic) {
        adversary["kind"] = "sudden_change_synthetic";
        adversary["change_point"] = config.resolved_change_point();
        adversary["scale_first"] = config.adversary.scale_first;
        adversary["scale_second"] = config.adversary.scale_second;
    } else {
        adversary["kind"] = "custom_oblivious";
        adversary["loss_table"] = config.adversary.loss_table;
    }
    root["adversary"] = adversary;

    json graph;
    switch (config.graph.type) {
        case GraphSpec::Type::kEdgeless: graph["type"] = "edgeless"; break;
        case GraphSpec::Type::kComplete: graph["type"] = "complete"; break;
        case GraphSpec::Type::kCompletePlusIsolated:
            graph["type"] = "complete_plus_isolated";
            graph["clique"] = config.graph.clique;
            graph["isolated"] = config.graph.isolated;
            break;
        case GraphSpec::Type::kExplicit: {
            graph["type"] = "explicit";
            graph["directed"] = config.graph.directed;
            json edges = json::array();
            for (auto [i, j] : config.graph.edges) edges.push_back({i + 1, j + 1});
            graph["edges"] = edges;
            break;
        }
        case GraphSpec::Type::kErdosRenyi:
            graph["type"] = "erdos_renyi";
            graph["p"] = config.graph.edge_probability;
            graph["directed"] = config.graph.directed;
            graph["per_round"] = config.graph.per_round;
            break;
    }
    root["graph"] = graph;

    json algorithms = json::array();
    for (const AlgorithmConfig& algo : config.algorithms) {
        json entry;
        entry["name"] = algo.selector;
        if (algo.eta) entry["eta"] = *algo.eta;
        if (algo.gamma) entry["gamma"] = *algo.gamma;
        if (!algo.alpha_exact) entry["alpha_bounds"] = *algo.alpha_fixed;
        algorithms.push_back(entry);
    }
    root["algorithms"] = algorithms;

    json output;
    output["format"] = config.output.format;
    output["checkpoint_stride"] = config.output.checkpoint_stride;
    output["dump_traces"] = config.output.dump_traces;
    root["output"] = output;

    return root.dump();
}

std::uint64_t config_hash(const ExperimentConfig& config) {
    std::string text = config_to_json(config);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

ContextDistribution make_context_distribution(const ExperimentConfig& config) {
    if (config.context.kind == ContextKind::kBernoulliScaled)
        return ContextDistribution::bernoulli_scaled(config.dimension, config.context.p);
    return ContextDistribution::custom_discrete(config.context.points,
                                                config.context.probabilities);
}

std::shared_ptr<const Adversary> make_adversary(const ExperimentConfig& config) {
    ContextDistribution dist = make_context_distribution(config);
    if (config.adversary.kind == AdversarySection::Kind::kSuddenChangeSynthetic)
        return std::make_shared<SuddenChangeAdversary>(
            config.num_actions, config.dimension, config.horizon,
            config.resolved_change_point(), config.adversary.scale_first,
            config.adversary.scale_second, config.graph, dist.norm_bound());
    return std::make_shared<TableAdversary>(config.adversary.loss_table, config.graph,
                                            dist.norm_bound());
}

} // namespace lgcb
