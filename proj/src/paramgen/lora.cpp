#include "modelgpt/paramgen/lora.hpp"

#include <algorithm>

#include "modelgpt/errors.hpp"

namespace modelgpt {

nn::Tensor merge_lora(const nn::Tensor& base, const LoraAdapter& adapter) {
    const int out = base.rows();
    const int in = base.cols();
    if (base.shape.size() != 2)
        throw ShapeError("lora base must be a matrix, got " + nn::shape_str(base.shape));
    if (adapter.r < 1 || adapter.r > std::min(out, in))
        throw ShapeError("lora rank " + std::to_string(adapter.r) +
                         " does not fit a " + nn::shape_str(base.shape) + " base");
    if (adapter.A.shape != std::vector<int>{adapter.r, in})
        throw ShapeError("lora A for " + adapter.target_name + " must be [" +
                         std::to_string(adapter.r) + ", " + std::to_string(in) + "], got " +
                         nn::shape_str(adapter.A.shape));
    if (adapter.B.shape != std::vector<int>{out, adapter.r})
        throw ShapeError("lora B for " + adapter.target_name + " must be [" +
                         std::to_string(out) + ", " + std::to_string(adapter.r) + "], got " +
                         nn::shape_str(adapter.B.shape));

    const double scale = static_cast<double>(adapter.alpha) / adapter.r;
    nn::Tensor merged(base.shape);
    for (int o = 0; o < out; ++o)
        for (int i = 0; i < in; ++i) {
            double acc = 0.0;
            for (int k = 0; k < adapter.r; ++k)
                acc += static_cast<double>(adapter.B.at(o, k)) * adapter.A.at(k, i);
            merged.at(o, i) = static_cast<float>(base.at(o, i) + scale * acc);
        }
    return merged;
}

}  // namespace modelgpt
