#include "modelgpt/modelgen/modelgen.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>

#include "modelgpt/encoder/encoder.hpp"
#include "modelgpt/errors.hpp"

namespace modelgpt {

namespace {

std::string lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

RuleTable RuleTable::defaults() {
    return {{
        {"classification", TaskKind::classification},
        {"classify", TaskKind::classification},
        {"analysis", TaskKind::classification},
        {"regression", TaskKind::regression},
    }};
}

RuleTable load_rule_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read rule table: " + path);
    RuleTable table;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("rule table line " + std::to_string(line_no) +
                              " is not 'keyword = kind'");
        const std::string keyword = lower(trim(line.substr(0, eq)));
        const std::string kind = lower(trim(line.substr(eq + 1)));
        if (keyword.empty())
            throw ConfigError("rule table line " + std::to_string(line_no) + " has no keyword");
        if (kind == "classification")
            table.keywords.emplace_back(keyword, TaskKind::classification);
        else if (kind == "regression")
            table.keywords.emplace_back(keyword, TaskKind::regression);
        else
            throw ConfigError("rule table line " + std::to_string(line_no) +
                              ": unknown kind '" + kind + "'");
    }
    return table;
}

TaskType infer_task_type(const Requirement& requirement) {
    return infer_task_type(requirement, RuleTable::defaults());
}

TaskType infer_task_type(const Requirement& requirement, const RuleTable& table) {
    if (requirement.sentence.empty())
        throw UnrecognizedRequirementError("requirement sentence is empty");

    // earliest task-type keyword in the sentence decides the kind
    const auto tokens = tokenize(requirement.sentence);
    std::optional<TaskKind> kind;
    for (const auto& tok : tokens) {
        for (const auto& [keyword, k] : table.keywords) {
            if (tok == keyword) {
                kind = k;
                break;
            }
        }
        if (kind) break;
    }
    if (!kind)
        throw UnrecognizedRequirementError("no task-type keyword in: " + requirement.sentence);

    const std::string text = lower(requirement.sentence);
    TaskType task;
    task.kind = *kind;

    if (task.kind == TaskKind::classification) {
        std::smatch m;
        if (std::regex_search(text, m, std::regex(R"(into (\d+) classes)")))
            task.n_classes = std::stoi(m[1]);
        else if (std::find(tokens.begin(), tokens.end(), "binary") != tokens.end())
            task.n_classes = 2;
        else if (requirement.task_hint && requirement.task_hint->n_classes > 0)
            task.n_classes = requirement.task_hint->n_classes;
        else
            task.n_classes = 2;
        if (task.n_classes < 2)
            throw InputError("classification requirement names " +
                             std::to_string(task.n_classes) + " classes, need at least 2");
    }

    std::smatch m;
    if (std::regex_search(text, m, std::regex(R"((\d+)[ -]dimensional)")))
        task.n_inputs = std::stoi(m[1]);
    else if (requirement.task_hint && requirement.task_hint->n_features > 0)
        task.n_inputs = requirement.task_hint->n_features;
    else
        task.n_inputs = 1;
    if (task.n_inputs < 1)
        throw InputError("requirement names " + std::to_string(task.n_inputs) +
                         " input dimensions, need at least 1");
    return task;
}

ArchitectureSpec build_arch_spec(const TaskType& task, const SizeProfile& profile) {
    ArchitectureSpec spec;
    spec.family = "mlp";
    spec.in_dim = task.n_inputs;
    spec.out_dim = task.kind == TaskKind::classification ? task.n_classes : 1;
    spec.hidden_dim = profile.hidden_dim;
    spec.n_layers = profile.n_layers;
    spec.adapter_mode = AdapterMode::full_weights;
    return spec;
}

}  // namespace modelgpt
