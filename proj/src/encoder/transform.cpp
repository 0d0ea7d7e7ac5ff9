#include "modelgpt/encoder/transform.hpp"

#include "modelgpt/errors.hpp"

namespace modelgpt {

TransformParams make_transform(int d0, int d) {
    if (d0 < 1 || d < 1)
        throw ConfigError("transform needs positive dims, got d0=" + std::to_string(d0) +
                          " d=" + std::to_string(d));
    TransformParams map;
    map.net.layers.push_back({nn::Tensor({d, d0}), nn::Tensor({d})});
    map.net.layers.push_back({nn::Tensor({d, d}), nn::Tensor({d})});
    return map;
}

void init_transform(TransformParams& map, std::mt19937_64& rng) {
    nn::init_uniform_fanin(map.net, rng);
}

nn::Tensor transform_traced(const nn::Tensor& z0, const TransformParams& map,
                            nn::MlpCache& cache) {
    if (static_cast<int>(z0.numel()) != map.in_dim())
        throw ShapeError("transform expects input dim " + std::to_string(map.in_dim()) +
                         ", got " + nn::shape_str(z0.shape));
    nn::Tensor row({1, map.in_dim()}, z0.data);
    nn::Tensor out = nn::mlp_forward_cached(map.net, row, cache);
    return nn::Tensor({map.out_dim()}, out.data);
}

nn::Tensor transform(const nn::Tensor& z0, const TransformParams& map) {
    nn::MlpCache cache;
    return transform_traced(z0, map, cache);
}

nn::MlpGrads transform_backward(const TransformParams& map, const nn::MlpCache& cache,
                                const nn::Tensor& g_z) {
    nn::Tensor row({1, map.out_dim()}, g_z.data);
    nn::MlpGrads grads = nn::mlp_backward(map.net, cache, row);
    grads.input.shape = {map.in_dim()};
    return grads;
}

}  // namespace modelgpt
