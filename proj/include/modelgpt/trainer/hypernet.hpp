#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "modelgpt/encoder/encoder.hpp"
#include "modelgpt/encoder/transform.hpp"
#include "modelgpt/harness/config.hpp"
#include "modelgpt/nn/adam.hpp"
#include "modelgpt/paramgen/generator.hpp"

namespace modelgpt {

// θp = (θe, θm, θg). version bumps on every optimizer step so stale forward
// traces are caught instead of silently producing wrong gradients.
struct HypernetParams {
    EncoderParams enc;
    TransformParams map;
    GeneratorParams gen;
    std::uint64_t version = 0;
};

// Seeded construction; generator heads appear lazily via ensure_heads.
HypernetParams make_hypernet(const TrainConfig& cfg);

struct HypernetGrads {
    EncoderGrads enc;
    nn::MlpGrads map;
    GeneratorGrads gen;
};

HypernetGrads make_hypernet_grads(const HypernetParams& hp);

// Everything remembered from requirement -> z0 -> z so the backward pass can
// run without recomputation.
struct ForwardTrace {
    EncodeTrace enc;
    nn::MlpCache map;
    nn::Tensor z0;
    nn::Tensor z;
    std::uint64_t version = 0;
};

// z = M(E(r)); the trace records the parameter version it saw.
nn::Tensor hyper_forward(const Requirement& requirement, const HypernetParams& hp,
                         ForwardTrace& trace);

// Full generation pass: θt = G(M(E(r))). The optional trace enables a
// later hyper_backward.
ParameterSet generate_from(const Requirement& requirement, const HypernetParams& hp,
                           const ShapeRegistry& registry, ForwardTrace* trace = nullptr);

// Chain rule from the generator output back to θp. upstream holds
// d loss / d θt per registry entry (Algorithm 1 feeds -Δθt here). Throws
// ConsistencyError when the trace predates the current parameters.
void hyper_backward(const HypernetParams& hp, const ShapeRegistry& registry,
                    const ForwardTrace& trace, const std::vector<nn::Tensor>& upstream,
                    HypernetGrads& grads);

// Canonical traversal: enc.cls, enc.token_table, enc.mix.*, map layers, then
// generator heads sorted by key. Serialization, the optimizer and the
// checkpoint id all share this order.
void for_each_tensor(HypernetParams& hp,
                     const std::function<void(const std::string&, nn::Tensor&)>& fn);
void for_each_tensor(const HypernetParams& hp,
                     const std::function<void(const std::string&, const nn::Tensor&)>& fn);

// Matched traversal over parameters and their gradient mirror.
void for_each_tensor(HypernetParams& hp, HypernetGrads& grads,
                     const std::function<void(const std::string&, nn::Tensor&, nn::Tensor&)>& fn);

// Adam over every hypernet tensor, state keyed by tensor name; bumps version.
struct HyperOptimizer {
    nn::AdamConfig config;
    std::map<std::string, nn::AdamState> states;

    void step(HypernetParams& hp, HypernetGrads& grads);
};

// FNV-1a over all tensor bytes in canonical order, as 16 hex digits.
std::string checkpoint_id(const HypernetParams& hp);

}  // namespace modelgpt
