#pragma once

#include <string>
#include <vector>

#include "modelgpt/harness/dataset.hpp"
#include "modelgpt/paramgen/assemble.hpp"
#include "modelgpt/trainer/hypernet.hpp"
#include "modelgpt/trainer/pair.hpp"

namespace modelgpt {

// Task loss (Eq. 5): cross-entropy for classification, MSE for regression.
// grads align with the model's tensors in registry order (layer-major,
// weight before bias).
struct TaskLossResult {
    double loss = 0.0;
    std::vector<nn::Tensor> grads;
};

TaskLossResult task_loss(const GeneratedModel& model, const Batch& batch, const TaskType& task);

// loss only, no gradients; used for evaluation
double eval_loss(const GeneratedModel& model, const Batch& batch, const TaskType& task);

// fraction of batch rows whose argmax logit hits the label
double accuracy(const GeneratedModel& model, const Batch& batch);

struct InnerStepConfig {
    InnerOpt optimizer = InnerOpt::adam;
    float lr = 2e-2f;
    float weight_decay = 1e-4f;  // adam mode only; sgd stays plain
};

// One inner update on the generated parameters. delta[k] is θt' − θt for
// tensor k (computed directly, so sgd mode gives exactly −lr·grad); the
// model itself is never mutated. Throws TrainingError naming the task and
// batch when the loss is not finite.
struct InnerStepResult {
    double loss = 0.0;
    std::vector<nn::Tensor> delta;
};

InnerStepResult inner_step(const GeneratedModel& model, const Batch& batch,
                           const TaskType& task, const InnerStepConfig& cfg,
                           const std::string& task_id = "", int batch_index = -1);

// One epoch's (pair, batch) visit order: pair i appears
// round(portion_i * base_batches) times, order shuffled by seed; the batch
// field counts that pair's occurrences so callers can cycle their data.
struct ScheduleEntry {
    int pair = 0;
    int batch = 0;
};

std::vector<ScheduleEntry> balance_tasks(const std::vector<double>& portions, int base_batches,
                                         std::uint64_t seed);

// Best-so-far snapshot per Eq. (6).
struct Checkpoint {
    HypernetParams params;
    double avg_eval_loss = 0.0;
    int epoch = 0;          // 0 = untrained snapshot
    std::string id;         // checkpoint_id(params)
    bool diverged = false;  // true when training stopped on a non-finite loss
};

// Algorithm 1: per batch, generate the target from the requirement, take one
// inner step, feed −Δθt back through the hypernet, and Adam-step θp.
// Checkpoints whenever the mean held-out loss over all pairs improves.
Checkpoint train(const std::vector<TaskRequirementPair>& pairs, const TrainConfig& cfg);

}  // namespace modelgpt
