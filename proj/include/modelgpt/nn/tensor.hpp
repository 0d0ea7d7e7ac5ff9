#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace modelgpt::nn {

// Dense row-major float32 tensor. Plain value type: copy is a deep copy.
struct Tensor {
    std::vector<int> shape;
    std::vector<float> data;

    Tensor() = default;
    explicit Tensor(std::vector<int> shape_);
    Tensor(std::vector<int> shape_, std::vector<float> data_);

    static Tensor zeros(std::vector<int> shape_) { return Tensor(std::move(shape_)); }

    std::size_t numel() const { return data.size(); }
    int rows() const { return shape.empty() ? 0 : shape[0]; }
    int cols() const { return shape.size() < 2 ? 1 : shape[1]; }

    float& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols() + c]; }
    float at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols() + c]; }

    bool same_shape(const Tensor& other) const { return shape == other.shape; }
};

std::size_t shape_numel(const std::vector<int>& shape);
std::string shape_str(const std::vector<int>& shape);

// Throws TrainingError if any element is NaN/Inf; `what` names the tensor in
// the message.
void ensure_finite(const Tensor& t, const char* what);
bool all_finite(const Tensor& t);

}  // namespace modelgpt::nn
