#pragma once

#include <string>

#include "modelgpt/nn/tensor.hpp"

namespace modelgpt {

// Low-rank adapter for one weight matrix: W' = W + (alpha/r) * B * A.
struct LoraAdapter {
    std::string target_name;
    nn::Tensor A;          // [r, in]
    nn::Tensor B;          // [out, r]
    float alpha = 8.0f;
    int r = 4;
    float dropout = 0.0f;  // training-time only; merging ignores it
};

nn::Tensor merge_lora(const nn::Tensor& base, const LoraAdapter& adapter);

}  // namespace modelgpt
