#pragma once

#include <random>

#include "modelgpt/nn/mlp.hpp"
#include "modelgpt/nn/tensor.hpp"

namespace modelgpt {

// θm: two affine layers d0 -> d -> d with a ReLU between them.
struct TransformParams {
    nn::MlpParams net;

    int in_dim() const { return net.in_dim(); }
    int out_dim() const { return net.out_dim(); }
};

TransformParams make_transform(int d0, int d);
void init_transform(TransformParams& map, std::mt19937_64& rng);

// z = M(z0); z0 is a flat [d0] vector
nn::Tensor transform(const nn::Tensor& z0, const TransformParams& map);
nn::Tensor transform_traced(const nn::Tensor& z0, const TransformParams& map,
                            nn::MlpCache& cache);

// returns grads for both layers plus d loss / d z0 in .input
nn::MlpGrads transform_backward(const TransformParams& map, const nn::MlpCache& cache,
                                const nn::Tensor& g_z);

}  // namespace modelgpt
