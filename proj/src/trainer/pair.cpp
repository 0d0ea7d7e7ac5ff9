#include "modelgpt/trainer/pair.hpp"

#include "modelgpt/errors.hpp"
#include "modelgpt/modelgen/modelgen.hpp"

namespace modelgpt {

void validate_pair(const TaskRequirementPair& pair) {
    if (pair.portion <= 0.0)
        throw InputError("pair " + pair.dataset.name + " has non-positive portion " +
                         std::to_string(pair.portion));
    if (pair.dataset.n_rows() == 0 || pair.dataset.train_idx.empty())
        throw InputError("pair " + pair.dataset.name + " has no training rows");

    const TaskType inferred = infer_task_type(pair.requirement);
    if (inferred.kind != pair.dataset.task.kind)
        throw InputError("pair " + pair.dataset.name +
                         ": requirement kind does not match the dataset");
    if (inferred.n_inputs != pair.dataset.n_features())
        throw InputError("pair " + pair.dataset.name + ": requirement names " +
                         std::to_string(inferred.n_inputs) + " inputs, dataset has " +
                         std::to_string(pair.dataset.n_features()));
    if (inferred.kind == TaskKind::classification &&
        inferred.n_classes != pair.dataset.task.n_classes)
        throw InputError("pair " + pair.dataset.name + ": requirement names " +
                         std::to_string(inferred.n_classes) + " classes, dataset has " +
                         std::to_string(pair.dataset.task.n_classes));
}

}  // namespace modelgpt
