#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lgcb/adversary.hpp"
#include "lgcb/context.hpp"

namespace lgcb {

struct ContextSection {
    ContextKind kind = ContextKind::kBernoulliScaled;
    double p = 0.5;                 // bernoulli_scaled
    std::vector<Vec> points;        // custom_discrete
    Vec probabilities;              // custom_discrete
};

struct AdversarySection {
    enum class Kind { kSuddenChangeSynthetic, kCustomOblivious };
    Kind kind = Kind::kSuddenChangeSynthetic;
    std::optional<std::int64_t> change_point; // default resolves to T/2
    double scale_first = 0.1;
    double scale_second = 0.05;
    std::vector<std::vector<Vec>> loss_table; // custom_oblivious: [t][i] -> theta
};

struct AlgorithmConfig {
    std::string selector;
    std::optional<double> eta;   // override, uniform-exploration variants only
    std::optional<double> gamma; // override, uniform-exploration variants only
    bool alpha_exact = true;     // alpha_bounds: "exact" or a fixed value
    std::optional<double> alpha_fixed;
};

struct OutputConfig {
    std::string directory;               // empty: resolved by the CLI
    std::string format = "csv";          // csv | jsonl
    std::int64_t checkpoint_stride = 0;  // 0: default T/100
    bool dump_traces = false;
};

struct ExperimentConfig {
    int num_actions = 1;
    int dimension = 1;
    std::int64_t horizon = 1;
    int trials = 1;
    std::uint64_t base_seed = 1;
    ContextSection context;
    AdversarySection adversary;
    GraphSpec graph;
    std::vector<AlgorithmConfig> algorithms;
    OutputConfig output;

    std::int64_t resolved_change_point() const {
        return adversary.change_point.value_or(horizon / 2);
    }
};

// Parses and validates a JSON experiment config. Unknown keys are errors
// (with a nearest-key suggestion); all messages carry the offending field
// path.
ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig parse_config_file(const std::string& path);

// Built-in presets; resolve_config accepts a file path or a preset name.
std::vector<std::string> preset_names();
const char* preset_text(const std::string& name); // nullptr if unknown
ExperimentConfig resolve_config(const std::string& path_or_preset);

// FNV-1a over the canonical JSON serialization.
std::string config_to_json(const ExperimentConfig& config);
std::uint64_t config_hash(const ExperimentConfig& config);

ContextDistribution make_context_distribution(const ExperimentConfig& config);
std::shared_ptr<const Adversary> make_adversary(const ExperimentConfig& config);

} // namespace lgcb
