#pragma once

#include <utility>
#include <vector>

#include "modelgpt/nn/tensor.hpp"

namespace modelgpt::nn {

struct LossResult {
    double loss = 0.0;
    Tensor grad;  // dL/d(first argument)
};

// Mean cross-entropy over the batch. Softmax is stabilized by subtracting the
// row max; grad is (softmax - onehot) / batch.
LossResult softmax_cross_entropy(const Tensor& logits, const std::vector<int>& labels);

// Mean squared error over all elements; grad = 2 (pred - target) / count.
LossResult mse_loss(const Tensor& pred, const Tensor& target);

}  // namespace modelgpt::nn
