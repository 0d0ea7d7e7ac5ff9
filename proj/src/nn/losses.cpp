#include "modelgpt/nn/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "modelgpt/errors.hpp"

namespace modelgpt::nn {

LossResult softmax_cross_entropy(const Tensor& logits, const std::vector<int>& labels) {
    if (logits.shape.size() != 2)
        throw ShapeError("softmax_cross_entropy: logits must be [batch x classes]");
    const int batch = logits.rows();
    const int classes = logits.cols();
    if (batch < 1) throw InputError("softmax_cross_entropy: empty batch");
    if (static_cast<int>(labels.size()) != batch)
        throw InputError("softmax_cross_entropy: " + std::to_string(labels.size()) +
                         " labels for batch of " + std::to_string(batch));

    LossResult res;
    res.grad = Tensor({batch, classes});
    double loss_acc = 0.0;
    for (int b = 0; b < batch; ++b) {
        const int y = labels[b];
        if (y < 0 || y >= classes)
            throw InputError("softmax_cross_entropy: label " + std::to_string(y) +
                             " out of range [0, " + std::to_string(classes) + ") at row " +
                             std::to_string(b));
        double mx = logits.at(b, 0);
        for (int c = 1; c < classes; ++c) mx = std::max(mx, static_cast<double>(logits.at(b, c)));
        double denom = 0.0;
        for (int c = 0; c < classes; ++c) denom += std::exp(static_cast<double>(logits.at(b, c)) - mx);
        loss_acc += std::log(denom) - (static_cast<double>(logits.at(b, y)) - mx);
        for (int c = 0; c < classes; ++c) {
            const double p = std::exp(static_cast<double>(logits.at(b, c)) - mx) / denom;
            res.grad.at(b, c) = static_cast<float>((p - (c == y ? 1.0 : 0.0)) / batch);
        }
    }
    res.loss = loss_acc / batch;
    if (!std::isfinite(res.loss)) throw TrainingError("softmax_cross_entropy: non-finite loss");
    return res;
}

LossResult mse_loss(const Tensor& pred, const Tensor& target) {
    if (!pred.same_shape(target))
        throw InputError("mse_loss: shape mismatch " + shape_str(pred.shape) + " vs " +
                         shape_str(target.shape));
    const std::size_t count = pred.numel();
    if (count == 0) throw InputError("mse_loss: empty tensors");
    LossResult res;
    res.grad = Tensor(pred.shape);
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double d = static_cast<double>(pred.data[i]) - target.data[i];
        acc += d * d;
        res.grad.data[i] = static_cast<float>(2.0 * d / static_cast<double>(count));
    }
    res.loss = acc / static_cast<double>(count);
    if (!std::isfinite(res.loss)) throw TrainingError("mse_loss: non-finite loss");
    return res;
}

}  // namespace modelgpt::nn
