#include "modelgpt/paramgen/registry.hpp"

#include <algorithm>

#include "modelgpt/errors.hpp"
#include "modelgpt/nn/tensor.hpp"

namespace modelgpt {

std::string ShapeEntry::key() const {
    std::string k = name + ":";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) k += "x";
        k += std::to_string(shape[i]);
    }
    return k;
}

std::size_t ShapeEntry::numel() const { return nn::shape_numel(shape); }

std::size_t ShapeRegistry::total_elements() const {
    std::size_t total = 0;
    for (const auto& e : entries) total += e.numel();
    return total;
}

namespace {

// layer dims of the (in -> hidden, n_layers x hidden -> hidden, hidden -> out)
// stack; mirrors nn::make_mlp
std::vector<std::pair<int, int>> layer_dims(const ArchitectureSpec& spec) {
    std::vector<std::pair<int, int>> dims;
    dims.emplace_back(spec.hidden_dim, spec.in_dim);
    for (int k = 0; k < spec.n_layers; ++k) dims.emplace_back(spec.hidden_dim, spec.hidden_dim);
    dims.emplace_back(spec.out_dim, spec.hidden_dim);
    return dims;
}

}  // namespace

ShapeRegistry register_shapes(const ArchitectureSpec& spec) {
    if (spec.in_dim < 1 || spec.out_dim < 1 || spec.hidden_dim < 1 || spec.n_layers < 0)
        throw ConfigError("architecture spec has non-positive dims: in=" +
                          std::to_string(spec.in_dim) + " hidden=" +
                          std::to_string(spec.hidden_dim) + " out=" +
                          std::to_string(spec.out_dim));

    const auto dims = layer_dims(spec);
    ShapeRegistry reg;

    if (spec.adapter_mode == AdapterMode::full_weights) {
        for (std::size_t k = 0; k < dims.size(); ++k) {
            const auto [out, in] = dims[k];
            const std::string base = "layer" + std::to_string(k);
            reg.entries.push_back({base + ".weight", {out, in}, TensorKind::weight, in});
            reg.entries.push_back({base + ".bias", {out}, TensorKind::bias, in});
        }
        return reg;
    }

    if (!spec.lora_config)
        throw ConfigError("lora adapter mode needs a lora config");
    const LoraConfig& lora = *spec.lora_config;
    if (lora.r < 1) throw ConfigError("lora rank must be positive, got " +
                                      std::to_string(lora.r));

    // empty target list means: adapt every layer
    std::vector<std::string> targets = lora.target_layers;
    if (targets.empty())
        for (std::size_t k = 0; k < dims.size(); ++k)
            targets.push_back("layer" + std::to_string(k));

    for (const auto& target : targets) {
        std::size_t k = dims.size();
        for (std::size_t i = 0; i < dims.size(); ++i)
            if ("layer" + std::to_string(i) == target) k = i;
        if (k == dims.size())
            throw ConfigError("lora target '" + target + "' is not a layer of this spec");
        const auto [out, in] = dims[k];
        if (lora.r > std::min(out, in))
            throw ConfigError("lora rank " + std::to_string(lora.r) + " exceeds min dim of " +
                              target + " (" + std::to_string(std::min(out, in)) + ")");
        reg.entries.push_back({target + ".lora_A", {lora.r, in}, TensorKind::lora_A, in});
        reg.entries.push_back({target + ".lora_B", {out, lora.r}, TensorKind::lora_B, lora.r});
    }
    return reg;
}

}  // namespace modelgpt
