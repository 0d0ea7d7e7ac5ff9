#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "modelgpt/nn/tensor.hpp"

namespace modelgpt::nn {

// Fully-connected network: weight is [out x in], bias is [out].
// ReLU between layers, identity on the last layer's output.
struct DenseLayer {
    Tensor weight;
    Tensor bias;
};

struct MlpParams {
    std::vector<DenseLayer> layers;

    int in_dim() const { return layers.empty() ? 0 : layers.front().weight.shape[1]; }
    int out_dim() const { return layers.empty() ? 0 : layers.back().weight.shape[0]; }
    std::size_t total_params() const;
};

// Builds the (in -> hidden, n_layers x hidden -> hidden, hidden -> out) stack
// with all values zero. n_layers counts only the hidden-to-hidden layers, so
// the stack always has n_layers + 2 dense layers.
MlpParams make_mlp(int in_dim, int hidden_dim, int n_layers, int out_dim);

// Uniform(-1/sqrt(fan_in), +1/sqrt(fan_in)) for every weight and bias.
void init_uniform_fanin(MlpParams& params, std::mt19937_64& rng);

Tensor mlp_forward(const MlpParams& params, const Tensor& x);

// Per-layer inputs and pre-activations kept for the backward pass.
struct MlpCache {
    std::vector<Tensor> inputs;   // inputs[k] = input to layer k
    std::vector<Tensor> preacts;  // preacts[k] = W x + b of layer k
};

Tensor mlp_forward_cached(const MlpParams& params, const Tensor& x, MlpCache& cache);

struct MlpGrads {
    std::vector<DenseLayer> layers;  // same shapes as the parameters
    Tensor input;                    // dL/dx
};

// grad_out is dL/d(output), shape [batch x out].
MlpGrads mlp_backward(const MlpParams& params, const MlpCache& cache, const Tensor& grad_out);

}  // namespace modelgpt::nn
