#include "modelgpt/nn/adam.hpp"

#include <cmath>
#include <string>

#include "modelgpt/errors.hpp"

namespace modelgpt::nn {

std::vector<float> adam_update(AdamState& state, const std::vector<float>& params,
                               const std::vector<float>& grads, const AdamConfig& cfg) {
    if (params.size() != grads.size())
        throw InputError("adam: params/grads length mismatch (" + std::to_string(params.size()) +
                         " vs " + std::to_string(grads.size()) + ")");
    if (state.m.size() != params.size()) state.resize(params.size());

    state.step += 1;
    const double bc1 = 1.0 - std::pow(static_cast<double>(cfg.beta1), static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(static_cast<double>(cfg.beta2), static_cast<double>(state.step));

    std::vector<float> update(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        float g = grads[i];
        if (!std::isfinite(g))
            throw TrainingError("adam: non-finite gradient at step " + std::to_string(state.step) +
                                ", index " + std::to_string(i));
        g += cfg.weight_decay * params[i];
        state.m[i] = cfg.beta1 * state.m[i] + (1.0f - cfg.beta1) * g;
        state.v[i] = cfg.beta2 * state.v[i] + (1.0f - cfg.beta2) * g * g;
        const double m_hat = state.m[i] / bc1;
        const double v_hat = state.v[i] / bc2;
        update[i] = static_cast<float>(-static_cast<double>(cfg.lr) * m_hat /
                                       (std::sqrt(v_hat) + cfg.eps));
    }
    return update;
}

void adam_step(AdamState& state, std::vector<float>& params, const std::vector<float>& grads,
               const AdamConfig& cfg) {
    const std::vector<float> update = adam_update(state, params, grads, cfg);
    for (std::size_t i = 0; i < params.size(); ++i) params[i] += update[i];
}

}  // namespace modelgpt::nn
