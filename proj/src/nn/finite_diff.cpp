#include "modelgpt/nn/finite_diff.hpp"

#include "modelgpt/errors.hpp"

namespace modelgpt::nn {

std::vector<double> finite_diff_grad(const std::function<double(const std::vector<double>&)>& f,
                                     std::vector<double> params, double h) {
    if (h <= 0.0) throw InputError("finite_diff_grad: h must be positive");
    std::vector<double> grad(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double orig = params[i];
        params[i] = orig + h;
        const double hi = f(params);
        params[i] = orig - h;
        const double lo = f(params);
        params[i] = orig;
        grad[i] = (hi - lo) / (2.0 * h);
    }
    return grad;
}

}  // namespace modelgpt::nn
