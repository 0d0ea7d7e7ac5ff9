#pragma once

#include <string>

#include "modelgpt/requirement/requirement.hpp"

namespace modelgpt {

// Built-in prompt text for each modality; identical to the files shipped
// under prompts/ so offline builds need no data directory.
const std::string& default_prompt_template(Modality modality);

// Read a template file verbatim. Throws InputError when unreadable.
std::string load_prompt_template(const std::string& path);

// Fill the user's rows and description into the template's final slots.
// Lines whose placeholder has no value are dropped entirely. At most
// max_rows data rows are embedded. Throws InputError on empty input.
std::string build_prompt(const UserInput& input, const std::string& template_text,
                         std::size_t max_rows = 8);

// Same, using the built-in template for input.modality.
std::string build_prompt(const UserInput& input, std::size_t max_rows = 8);

}  // namespace modelgpt
