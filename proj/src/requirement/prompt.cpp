#include "modelgpt/requirement/prompt.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "modelgpt/errors.hpp"

namespace modelgpt {

namespace {

const std::string kTabularTemplate =
    R"(Summarize the task behind the rows below in exactly one sentence.
The type of the task must be pointed out in the final sentence.
Data-specific information, if any, should be reflected in the final sentence, which must only focus on the data itself rather than the labels given.

Example:
Data:
5.1,3.5,1.4,0.2 -> setosa
7.0,3.2,4.7,1.4 -> versicolor
6.3,3.3,6.0,2.5 -> virginica
Description: data comes from the Iris dataset
Thought: every row holds 4 numeric measurements and one of 3 species names, so this is multi-class classification of tabular measurements.
Answer: This is a tabular classification task to distinguish 3 species of iris flowers.

Now the user's input:
Data:
{USER_DATA}
Description: {USER_DESCRIPTION}
Answer:)";

const std::string kTextTemplate =
    R"(Summarize the task behind the examples below in exactly one sentence.
The type of the task must be pointed out in the final sentence.
Data-specific information, if any, should be reflected in the final sentence, which must only focus on the data itself rather than the labels given.

Example:
Data:
"a touching and wonderfully acted film" -> positive
"a complete waste of two hours" -> negative
Thought: each line pairs one review sentence with a positive or negative tag, so this is binary classification of short texts by sentiment.
Answer: This is a task of binary sentiment analysis.

Now the user's input:
Data:
{USER_DATA}
Description: {USER_DESCRIPTION}
Answer:)";

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    lines.push_back(cur);
    return lines;
}

// replace the placeholder in-place; true when the line contained it
bool substitute(std::string& line, const std::string& placeholder, const std::string& value) {
    const auto pos = line.find(placeholder);
    if (pos == std::string::npos) return false;
    line = line.substr(0, pos) + value + line.substr(pos + placeholder.size());
    return true;
}

}  // namespace

const std::string& default_prompt_template(Modality modality) {
    return modality == Modality::text ? kTextTemplate : kTabularTemplate;
}

std::string load_prompt_template(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read prompt template: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string build_prompt(const UserInput& input, const std::string& template_text,
                         std::size_t max_rows) {
    if (input.empty())
        throw InputError("user input needs a description or at least one data row");

    std::string data_block;
    const std::size_t n = std::min(input.data_sample.size(), max_rows);
    for (std::size_t i = 0; i < n; ++i) {
        if (i) data_block += '\n';
        data_block += input.data_sample[i].features + " -> " + input.data_sample[i].label;
    }

    // fill the final slots; a slot with no value disappears along with its
    // bare header line (the worked example higher up is left untouched)
    std::vector<std::string> out;
    for (std::string line : split_lines(template_text)) {
        const bool had_data = line.find("{USER_DATA}") != std::string::npos;
        const bool had_desc = line.find("{USER_DESCRIPTION}") != std::string::npos;
        if (had_data && data_block.empty()) {
            if (!out.empty() && out.back() == "Data:") out.pop_back();
            continue;
        }
        if (had_desc && input.description.empty()) {
            if (!out.empty() && out.back() == "Description:") out.pop_back();
            continue;
        }
        substitute(line, "{USER_DATA}", data_block);
        substitute(line, "{USER_DESCRIPTION}", input.description);
        out.push_back(line);
    }

    std::string joined;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i) joined += '\n';
        joined += out[i];
    }
    return joined;
}

std::string build_prompt(const UserInput& input, std::size_t max_rows) {
    return build_prompt(input, default_prompt_template(input.modality), max_rows);
}

}  // namespace modelgpt
