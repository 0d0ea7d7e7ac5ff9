#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modelgpt/requirement/requirement.hpp"

namespace modelgpt {

// What kind of model the requirement asks for.
struct TaskType {
    TaskKind kind = TaskKind::classification;
    int n_classes = 0;  // classification only
    int n_inputs = 0;
};

struct LoraConfig {
    int r = 4;
    float alpha = 8.0f;
    float dropout = 0.1f;
    std::vector<std::string> target_layers;  // layer names carrying adapters
};

enum class AdapterMode { full_weights, lora };

struct ArchitectureSpec {
    std::string family = "mlp";
    int in_dim = 0;
    int out_dim = 0;
    int hidden_dim = 0;
    int n_layers = 0;  // hidden-to-hidden layers, as in nn::make_mlp
    AdapterMode adapter_mode = AdapterMode::full_weights;
    std::optional<LoraConfig> lora_config;
};

// Desk-scale sizing knobs for the generated target.
struct SizeProfile {
    int hidden_dim = 32;
    int n_layers = 1;
};

// keyword -> task kind, checked against whole tokens in sentence order
struct RuleTable {
    std::vector<std::pair<std::string, TaskKind>> keywords;
    static RuleTable defaults();
};

// Reads lines of the form "keyword = classification|regression"; '#' starts
// a comment. Throws ConfigError on unknown kinds or unreadable files.
RuleTable load_rule_table(const std::string& path);

// Keyword grammar over the requirement sentence. Counts come from the
// sentence patterns ("into K classes", "binary", "N-dimensional"), then the
// requirement's task hint, then defaults (2 classes, 1 input). A sentence
// with no task-type keyword raises UnrecognizedRequirementError.
TaskType infer_task_type(const Requirement& requirement);
TaskType infer_task_type(const Requirement& requirement, const RuleTable& table);

// Deterministic rule fill: mlp family, full weights, profile sizing.
ArchitectureSpec build_arch_spec(const TaskType& task, const SizeProfile& profile = {});

}  // namespace modelgpt
