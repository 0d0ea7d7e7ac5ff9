#pragma once

#include "modelgpt/harness/dataset.hpp"
#include "modelgpt/requirement/requirement.hpp"

namespace modelgpt {

// One (Di, ri) element of the training pool A.
struct TaskRequirementPair {
    Dataset dataset;
    Requirement requirement;
    double portion = 1.0;
};

// Checks the pair invariants: positive portion, non-empty data, and a
// requirement whose inferred task matches the dataset's dims. Throws
// InputError on violation.
void validate_pair(const TaskRequirementPair& pair);

}  // namespace modelgpt
