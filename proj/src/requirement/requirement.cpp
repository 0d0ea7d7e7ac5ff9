#include "modelgpt/requirement/requirement.hpp"

#include <cctype>
#include <sstream>

#include "modelgpt/errors.hpp"

namespace modelgpt {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

}  // namespace

std::string normalize_sentence(const std::string& raw) {
    // split on sentence terminators and keep the last non-empty piece
    std::string last, current;
    for (char c : raw) {
        if (is_terminal(c)) {
            std::string t = trim(current);
            if (!t.empty()) last = t;
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    std::string t = trim(current);
    if (!t.empty()) last = t;   // input without a final terminator
    if (last.empty()) return "";
    return last + ".";
}

Requirement fallback_template(const TaskMeta& meta) {
    if (meta.n_features < 1)
        throw InputError("task meta needs at least 1 feature, got " +
                         std::to_string(meta.n_features));
    if (meta.kind == TaskKind::classification && meta.n_classes < 2)
        throw InputError("classification needs at least 2 classes, got " +
                         std::to_string(meta.n_classes));

    const std::string tag = meta.domain_tag.empty() ? "user data" : meta.domain_tag;
    std::ostringstream s;
    s << "This is a tabular ";
    if (meta.kind == TaskKind::classification)
        s << "classification into " << meta.n_classes << " classes";
    else
        s << "regression";
    s << " task on " << meta.n_features << "-dimensional rows from " << tag << ".";

    Requirement r;
    r.sentence = s.str();
    r.source = ReqSource::templated;
    r.task_hint = meta;
    return r;
}

}  // namespace modelgpt
