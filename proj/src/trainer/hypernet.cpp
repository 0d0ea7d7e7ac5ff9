#include "modelgpt/trainer/hypernet.hpp"

#include <cstdio>
#include <cstring>

#include "modelgpt/errors.hpp"

namespace modelgpt {

HypernetParams make_hypernet(const TrainConfig& cfg) {
    validate(cfg);
    std::mt19937_64 rng(cfg.seed);
    HypernetParams hp;
    hp.enc = make_encoder(cfg.encoder_vocab, cfg.encoder_dim);
    init_encoder(hp.enc, rng);
    hp.map = make_transform(cfg.encoder_dim, cfg.latent_dim);
    init_transform(hp.map, rng);
    hp.gen = make_generator(cfg.latent_dim);
    return hp;
}

HypernetGrads make_hypernet_grads(const HypernetParams& hp) {
    HypernetGrads g;
    g.enc = make_encoder_grads(hp.enc);
    for (const auto& layer : hp.map.net.layers)
        g.map.layers.push_back({nn::Tensor(layer.weight.shape), nn::Tensor(layer.bias.shape)});
    g.gen = make_generator_grads(hp.gen);
    return g;
}

nn::Tensor hyper_forward(const Requirement& requirement, const HypernetParams& hp,
                         ForwardTrace& trace) {
    trace.z0 = encode_traced(requirement, hp.enc, trace.enc);
    trace.map = nn::MlpCache{};
    trace.z = transform_traced(trace.z0, hp.map, trace.map);
    trace.version = hp.version;
    return trace.z;
}

ParameterSet generate_from(const Requirement& requirement, const HypernetParams& hp,
                           const ShapeRegistry& registry, ForwardTrace* trace) {
    ForwardTrace local;
    ForwardTrace& t = trace ? *trace : local;
    const nn::Tensor z = hyper_forward(requirement, hp, t);
    return generate(z, hp.gen, registry);
}

void hyper_backward(const HypernetParams& hp, const ShapeRegistry& registry,
                    const ForwardTrace& trace, const std::vector<nn::Tensor>& upstream,
                    HypernetGrads& grads) {
    if (trace.version != hp.version)
        throw ConsistencyError("forward trace is from parameter version " +
                               std::to_string(trace.version) + ", parameters are at " +
                               std::to_string(hp.version));
    nn::Tensor g_z = generate_backward(trace.z, hp.gen, registry, upstream, grads.gen);
    nn::MlpGrads map_grads = transform_backward(hp.map, trace.map, g_z);
    for (std::size_t k = 0; k < map_grads.layers.size(); ++k) {
        auto& dst = grads.map.layers[k];
        const auto& src = map_grads.layers[k];
        for (std::size_t i = 0; i < src.weight.data.size(); ++i)
            dst.weight.data[i] += src.weight.data[i];
        for (std::size_t i = 0; i < src.bias.data.size(); ++i)
            dst.bias.data[i] += src.bias.data[i];
    }
    encode_backward(hp.enc, trace.enc, map_grads.input, grads.enc);
}

namespace {

template <typename HP, typename Fn>
void traverse(HP& hp, const Fn& fn) {
    fn("enc.cls", hp.enc.cls);
    fn("enc.token_table", hp.enc.token_table);
    fn("enc.mix.weight", hp.enc.mix.weight);
    fn("enc.mix.bias", hp.enc.mix.bias);
    for (std::size_t k = 0; k < hp.map.net.layers.size(); ++k) {
        const std::string base = "map.layer" + std::to_string(k);
        fn(base + ".weight", hp.map.net.layers[k].weight);
        fn(base + ".bias", hp.map.net.layers[k].bias);
    }
    for (auto& [key, head] : hp.gen.heads) {   // std::map: sorted by key
        fn("gen." + key + ".weight", head.weight);
        fn("gen." + key + ".bias", head.bias);
    }
}

}  // namespace

void for_each_tensor(HypernetParams& hp,
                     const std::function<void(const std::string&, nn::Tensor&)>& fn) {
    traverse(hp, fn);
}

void for_each_tensor(const HypernetParams& hp,
                     const std::function<void(const std::string&, const nn::Tensor&)>& fn) {
    traverse(hp, fn);
}

void for_each_tensor(
    HypernetParams& hp, HypernetGrads& grads,
    const std::function<void(const std::string&, nn::Tensor&, nn::Tensor&)>& fn) {
    fn("enc.cls", hp.enc.cls, grads.enc.cls);
    fn("enc.token_table", hp.enc.token_table, grads.enc.token_table);
    fn("enc.mix.weight", hp.enc.mix.weight, grads.enc.mix.weight);
    fn("enc.mix.bias", hp.enc.mix.bias, grads.enc.mix.bias);
    for (std::size_t k = 0; k < hp.map.net.layers.size(); ++k) {
        const std::string base = "map.layer" + std::to_string(k);
        fn(base + ".weight", hp.map.net.layers[k].weight, grads.map.layers[k].weight);
        fn(base + ".bias", hp.map.net.layers[k].bias, grads.map.layers[k].bias);
    }
    for (auto& [key, head] : hp.gen.heads) {
        auto git = grads.gen.heads.find(key);
        if (git == grads.gen.heads.end())
            throw ConsistencyError("gradients are missing generator head " + key);
        fn("gen." + key + ".weight", head.weight, git->second.weight);
        fn("gen." + key + ".bias", head.bias, git->second.bias);
    }
}

void HyperOptimizer::step(HypernetParams& hp, HypernetGrads& grads) {
    for_each_tensor(hp, grads,
                    [this](const std::string& name, nn::Tensor& param, nn::Tensor& grad) {
                        auto [it, fresh] = states.try_emplace(name, param.numel());
                        if (!fresh && it->second.m.size() != param.numel())
                            throw ConsistencyError("optimizer state for " + name +
                                                   " has wrong size");
                        nn::adam_step(it->second, param.data, grad.data, config);
                    });
    ++hp.version;
}

std::string checkpoint_id(const HypernetParams& hp) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for_each_tensor(hp, [&h](const std::string& name, const nn::Tensor& t) {
        for (unsigned char c : name) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        for (float v : t.data) {
            std::uint32_t bits;
            std::memcpy(&bits, &v, sizeof bits);
            for (int b = 0; b < 4; ++b) {
                h ^= (bits >> (8 * b)) & 0xff;
                h *= 0x100000001b3ULL;
            }
        }
    });
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace modelgpt
