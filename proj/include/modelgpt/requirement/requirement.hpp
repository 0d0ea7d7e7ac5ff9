#pragma once

#include <optional>
#include <string>
#include <vector>

namespace modelgpt {

enum class Modality { tabular, text };
enum class TaskKind { classification, regression };

// One labelled example rendered as text, e.g. "5.1,3.5,1.4,0.2" -> "setosa".
struct DataRow {
    std::string features;
    std::string label;
};

// What the user hands us: free-form description, labelled rows, or both.
struct UserInput {
    std::string description;
    std::vector<DataRow> data_sample;
    Modality modality = Modality::tabular;

    bool empty() const { return description.empty() && data_sample.empty(); }
};

// Structured facts about a task, used for the offline requirement template
// and as a hint when a sentence omits counts.
struct TaskMeta {
    TaskKind kind = TaskKind::classification;
    int n_features = 0;
    int n_classes = 0;   // classification only
    std::string domain_tag;
};

enum class ReqSource { llm, templated };

// The one-sentence task summary everything downstream consumes.
struct Requirement {
    std::string sentence;
    ReqSource source = ReqSource::templated;
    std::optional<TaskMeta> task_hint;
};

// Trim, keep only the last sentence, and end it with a single period.
// Returns "" when the input carries no sentence at all.
std::string normalize_sentence(const std::string& raw);

// Deterministic offline requirement: fills the fixed sentence pattern from
// meta. Throws InputError when meta cannot describe a real task.
Requirement fallback_template(const TaskMeta& meta);

}  // namespace modelgpt
