#pragma once

#include <functional>
#include <vector>

namespace modelgpt::nn {

// Central-difference gradient oracle: (f(p + h e_i) - f(p - h e_i)) / 2h per
// coordinate. Perturbation happens in double so quantization of p +/- h does
// not pollute the estimate; implementations under test may quantize to f32
// inside `f`.
std::vector<double> finite_diff_grad(const std::function<double(const std::vector<double>&)>& f,
                                     std::vector<double> params, double h);

}  // namespace modelgpt::nn
