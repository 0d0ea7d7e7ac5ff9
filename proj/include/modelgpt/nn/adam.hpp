#pragma once

#include <cstdint>
#include <vector>

namespace modelgpt::nn {

struct AdamConfig {
    float lr = 1e-3f;
    float beta1 = 0.9f;
    float beta2 = 0.999f;
    float eps = 1e-8f;
    float weight_decay = 0.0f;  // applied as grad += weight_decay * param
};

struct AdamState {
    std::vector<float> m;
    std::vector<float> v;
    std::int64_t step = 0;

    explicit AdamState(std::size_t n = 0) : m(n, 0.0f), v(n, 0.0f) {}
    void resize(std::size_t n) { m.assign(n, 0.0f); v.assign(n, 0.0f); step = 0; }
};

// In-place bias-corrected Adam step over flat buffers. Throws TrainingError
// (carrying the step index) on non-finite gradients.
void adam_step(AdamState& state, std::vector<float>& params, const std::vector<float>& grads,
               const AdamConfig& cfg);

// Same arithmetic, but returns the update vector instead of touching params:
// update[i] is exactly what adam_step would add to params[i]. State advances.
std::vector<float> adam_update(AdamState& state, const std::vector<float>& params,
                               const std::vector<float>& grads, const AdamConfig& cfg);

}  // namespace modelgpt::nn
