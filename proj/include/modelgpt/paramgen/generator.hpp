#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "modelgpt/nn/tensor.hpp"
#include "modelgpt/paramgen/registry.hpp"

namespace modelgpt {

// One affine head per registry entry: z [d] -> flattened target tensor.
struct GeneratorHead {
    nn::Tensor weight;  // [numel, d]
    nn::Tensor bias;    // [numel]
};

// θg: dictionary of heads keyed by ShapeEntry::key(), so tasks sharing a
// tensor name and shape share a head.
struct GeneratorParams {
    int d = 0;
    std::map<std::string, GeneratorHead> heads;
};

GeneratorParams make_generator(int d);

// Create heads for any registry entry not seen before. Weights start at
// uniform(±1/sqrt(d)) scaled by 0.01; biases at uniform(±1/sqrt(fan_in)) of
// the target tensor, so a freshly generated model behaves like a
// conventionally initialized one.
void ensure_heads(GeneratorParams& gen, const ShapeRegistry& registry, std::mt19937_64& rng);

// Generated target tensors, aligned one-to-one with registry.entries.
struct ParameterSet {
    std::vector<nn::Tensor> tensors;
};

// θt = G(z; θg): every head evaluated on z, outputs reshaped row-major.
// Throws ConsistencyError when θg lacks a head or d does not match.
ParameterSet generate(const nn::Tensor& z, const GeneratorParams& gen,
                      const ShapeRegistry& registry);

// gradient accumulators, same keys as GeneratorParams.heads
struct GeneratorGrads {
    std::map<std::string, GeneratorHead> heads;
};

GeneratorGrads make_generator_grads(const GeneratorParams& gen);

// Accumulate d loss / d θg given per-tensor upstream gradients; returns
// d loss / d z.
nn::Tensor generate_backward(const nn::Tensor& z, const GeneratorParams& gen,
                             const ShapeRegistry& registry,
                             const std::vector<nn::Tensor>& g_out, GeneratorGrads& grads);

}  // namespace modelgpt
