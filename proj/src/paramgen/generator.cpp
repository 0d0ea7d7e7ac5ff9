#include "modelgpt/paramgen/generator.hpp"

#include <cmath>

#include "modelgpt/errors.hpp"

namespace modelgpt {

GeneratorParams make_generator(int d) {
    if (d < 1) throw ConfigError("generator latent dim must be positive, got " +
                                 std::to_string(d));
    GeneratorParams gen;
    gen.d = d;
    return gen;
}

void ensure_heads(GeneratorParams& gen, const ShapeRegistry& registry, std::mt19937_64& rng) {
    const float w_bound = 1.0f / std::sqrt(static_cast<float>(gen.d));
    for (const auto& entry : registry.entries) {
        const std::string key = entry.key();
        if (gen.heads.count(key)) continue;
        const int numel = static_cast<int>(entry.numel());
        GeneratorHead head;
        head.weight = nn::Tensor({numel, gen.d});
        head.bias = nn::Tensor({numel});
        std::uniform_real_distribution<float> w_dist(-w_bound, w_bound);
        for (float& v : head.weight.data) v = w_dist(rng) * 0.01f;
        const float b_bound = 1.0f / std::sqrt(static_cast<float>(entry.fan_in));
        std::uniform_real_distribution<float> b_dist(-b_bound, b_bound);
        for (float& v : head.bias.data) v = b_dist(rng);
        gen.heads.emplace(key, std::move(head));
    }
}

namespace {

const GeneratorHead& head_for(const GeneratorParams& gen, const ShapeEntry& entry) {
    auto it = gen.heads.find(entry.key());
    if (it == gen.heads.end())
        throw ConsistencyError("generator has no head for " + entry.key());
    const GeneratorHead& head = it->second;
    if (head.weight.shape[1] != gen.d ||
        head.weight.shape[0] != static_cast<int>(entry.numel()))
        throw ConsistencyError("generator head for " + entry.key() +
                               " has shape " + nn::shape_str(head.weight.shape) +
                               ", registry wants [" + std::to_string(entry.numel()) + ", " +
                               std::to_string(gen.d) + "]");
    return head;
}

}  // namespace

ParameterSet generate(const nn::Tensor& z, const GeneratorParams& gen,
                      const ShapeRegistry& registry) {
    if (static_cast<int>(z.numel()) != gen.d)
        throw ConsistencyError("latent z has dim " + std::to_string(z.numel()) +
                               ", generator expects " + std::to_string(gen.d));
    ParameterSet out;
    out.tensors.reserve(registry.entries.size());
    for (const auto& entry : registry.entries) {
        const GeneratorHead& head = head_for(gen, entry);
        const int numel = static_cast<int>(entry.numel());
        nn::Tensor t(entry.shape);
        for (int i = 0; i < numel; ++i) {
            double acc = head.bias.data[i];
            for (int j = 0; j < gen.d; ++j) acc += head.weight.at(i, j) * z.data[j];
            t.data[i] = static_cast<float>(acc);
        }
        nn::ensure_finite(t, entry.name.c_str());
        out.tensors.push_back(std::move(t));
    }
    return out;
}

GeneratorGrads make_generator_grads(const GeneratorParams& gen) {
    GeneratorGrads grads;
    for (const auto& [key, head] : gen.heads)
        grads.heads.emplace(key, GeneratorHead{nn::Tensor(head.weight.shape),
                                               nn::Tensor(head.bias.shape)});
    return grads;
}

nn::Tensor generate_backward(const nn::Tensor& z, const GeneratorParams& gen,
                             const ShapeRegistry& registry,
                             const std::vector<nn::Tensor>& g_out, GeneratorGrads& grads) {
    if (g_out.size() != registry.entries.size())
        throw ConsistencyError("generator backward got " + std::to_string(g_out.size()) +
                               " gradients for " + std::to_string(registry.entries.size()) +
                               " registry entries");
    nn::Tensor g_z({gen.d});
    for (std::size_t e = 0; e < registry.entries.size(); ++e) {
        const ShapeEntry& entry = registry.entries[e];
        const GeneratorHead& head = head_for(gen, entry);
        const nn::Tensor& g = g_out[e];
        if (g.numel() != entry.numel())
            throw ShapeError("gradient for " + entry.name + " has " +
                             std::to_string(g.numel()) + " elements, entry has " +
                             std::to_string(entry.numel()));
        GeneratorHead& hg = grads.heads.at(entry.key());
        const int numel = static_cast<int>(entry.numel());
        for (int i = 0; i < numel; ++i) {
            const float gi = g.data[i];
            hg.bias.data[i] += gi;
            for (int j = 0; j < gen.d; ++j) {
                hg.weight.at(i, j) += gi * z.data[j];
                g_z.data[j] += head.weight.at(i, j) * gi;
            }
        }
    }
    return g_z;
}

}  // namespace modelgpt
