#include "modelgpt/nn/mlp.hpp"

#include <cmath>
#include <string>

#include "modelgpt/errors.hpp"

namespace modelgpt::nn {

std::size_t MlpParams::total_params() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.weight.numel() + l.bias.numel();
    return n;
}

MlpParams make_mlp(int in_dim, int hidden_dim, int n_layers, int out_dim) {
    if (in_dim < 1 || hidden_dim < 1 || n_layers < 0 || out_dim < 1)
        throw InputError("make_mlp: dims must be positive (n_layers may be 0)");
    MlpParams p;
    p.layers.push_back({Tensor({hidden_dim, in_dim}), Tensor({hidden_dim})});
    for (int k = 0; k < n_layers; ++k)
        p.layers.push_back({Tensor({hidden_dim, hidden_dim}), Tensor({hidden_dim})});
    p.layers.push_back({Tensor({out_dim, hidden_dim}), Tensor({out_dim})});
    return p;
}

void init_uniform_fanin(MlpParams& params, std::mt19937_64& rng) {
    for (auto& l : params.layers) {
        const float bound = 1.0f / std::sqrt(static_cast<float>(l.weight.shape[1]));
        std::uniform_real_distribution<float> dist(-bound, bound);
        for (float& v : l.weight.data) v = dist(rng);
        for (float& v : l.bias.data) v = dist(rng);
    }
}

namespace {

// y = x W^T + b, accumulated in double so the result does not depend on
// how a future refactor might tile the loop.
Tensor affine(const DenseLayer& layer, const Tensor& x, int layer_idx) {
    const int out = layer.weight.shape[0];
    const int in = layer.weight.shape[1];
    if (x.cols() != in)
        throw ShapeError("layer " + std::to_string(layer_idx) + " expects input dim " +
                         std::to_string(in) + ", got " + std::to_string(x.cols()));
    const int batch = x.rows();
    Tensor y({batch, out});
    for (int b = 0; b < batch; ++b) {
        for (int o = 0; o < out; ++o) {
            double acc = layer.bias.data[o];
            for (int i = 0; i < in; ++i)
                acc += static_cast<double>(layer.weight.at(o, i)) * x.at(b, i);
            y.at(b, o) = static_cast<float>(acc);
        }
    }
    return y;
}

Tensor relu(const Tensor& t) {
    Tensor out = t;
    for (float& v : out.data) v = v > 0.0f ? v : 0.0f;
    return out;
}

}  // namespace

Tensor mlp_forward(const MlpParams& params, const Tensor& x) {
    MlpCache scratch;
    return mlp_forward_cached(params, x, scratch);
}

Tensor mlp_forward_cached(const MlpParams& params, const Tensor& x, MlpCache& cache) {
    if (params.layers.empty()) throw ShapeError("mlp_forward: no layers");
    if (x.shape.size() != 2)
        throw ShapeError("mlp_forward: input must be [batch x features], got " + shape_str(x.shape));
    cache.inputs.clear();
    cache.preacts.clear();
    Tensor h = x;
    for (std::size_t k = 0; k < params.layers.size(); ++k) {
        cache.inputs.push_back(h);
        Tensor pre = affine(params.layers[k], h, static_cast<int>(k));
        cache.preacts.push_back(pre);
        h = (k + 1 < params.layers.size()) ? relu(pre) : pre;
    }
    ensure_finite(h, "mlp_forward output");
    return h;
}

MlpGrads mlp_backward(const MlpParams& params, const MlpCache& cache, const Tensor& grad_out) {
    const std::size_t n_layers = params.layers.size();
    if (cache.inputs.size() != n_layers || cache.preacts.size() != n_layers)
        throw ConsistencyError("mlp_backward: cache does not match parameters");
    MlpGrads grads;
    grads.layers.resize(n_layers);

    Tensor g = grad_out;  // dL/d(pre-activation of current layer), walking backwards
    for (std::size_t idx = n_layers; idx-- > 0;) {
        const DenseLayer& layer = params.layers[idx];
        const Tensor& input = cache.inputs[idx];
        const int out = layer.weight.shape[0];
        const int in = layer.weight.shape[1];
        const int batch = input.rows();
        if (g.rows() != batch || g.cols() != out)
            throw ShapeError("mlp_backward: gradient shape mismatch at layer " + std::to_string(idx));

        DenseLayer& lg = grads.layers[idx];
        lg.weight = Tensor({out, in});
        lg.bias = Tensor({out});
        for (int o = 0; o < out; ++o) {
            double bias_acc = 0.0;
            for (int b = 0; b < batch; ++b) bias_acc += g.at(b, o);
            lg.bias.data[o] = static_cast<float>(bias_acc);
            for (int i = 0; i < in; ++i) {
                double acc = 0.0;
                for (int b = 0; b < batch; ++b)
                    acc += static_cast<double>(g.at(b, o)) * input.at(b, i);
                lg.weight.at(o, i) = static_cast<float>(acc);
            }
        }

        Tensor gx({batch, in});
        for (int b = 0; b < batch; ++b)
            for (int i = 0; i < in; ++i) {
                double acc = 0.0;
                for (int o = 0; o < out; ++o)
                    acc += static_cast<double>(g.at(b, o)) * layer.weight.at(o, i);
                gx.at(b, i) = static_cast<float>(acc);
            }

        if (idx > 0) {
            // gx is dL/d(relu(pre[idx-1])); mask it into dL/d(pre[idx-1]).
            const Tensor& pre = cache.preacts[idx - 1];
            for (std::size_t j = 0; j < gx.data.size(); ++j)
                if (pre.data[j] <= 0.0f) gx.data[j] = 0.0f;
        }
        if (idx == 0) grads.input = gx;
        g = std::move(gx);
    }
    return grads;
}

}  // namespace modelgpt::nn
