#include "modelgpt/paramgen/assemble.hpp"

#include "modelgpt/errors.hpp"
#include "modelgpt/paramgen/lora.hpp"

namespace modelgpt {

GeneratedModel assemble_model(const ArchitectureSpec& spec, const ParameterSet& params,
                              const nn::MlpParams* base) {
    const ShapeRegistry registry = register_shapes(spec);
    if (params.tensors.size() != registry.entries.size())
        throw ConsistencyError("parameter set has " + std::to_string(params.tensors.size()) +
                               " tensors, spec registry has " +
                               std::to_string(registry.entries.size()));
    for (std::size_t e = 0; e < registry.entries.size(); ++e)
        if (params.tensors[e].shape != registry.entries[e].shape)
            throw ShapeError("tensor for " + registry.entries[e].name + " has shape " +
                             nn::shape_str(params.tensors[e].shape) + ", registry wants " +
                             nn::shape_str(registry.entries[e].shape));

    GeneratedModel model;
    model.spec = spec;

    if (spec.adapter_mode == AdapterMode::full_weights) {
        // registry order is layer-major, weight before bias
        for (std::size_t e = 0; e < registry.entries.size(); e += 2)
            model.params.layers.push_back({params.tensors[e], params.tensors[e + 1]});
        return model;
    }

    if (base == nullptr)
        throw InputError("lora assembly needs the base model to merge into");
    const nn::MlpParams expected =
        nn::make_mlp(spec.in_dim, spec.hidden_dim, spec.n_layers, spec.out_dim);
    if (base->layers.size() != expected.layers.size())
        throw ShapeError("lora base has " + std::to_string(base->layers.size()) +
                         " layers, spec wants " + std::to_string(expected.layers.size()));
    for (std::size_t k = 0; k < base->layers.size(); ++k)
        if (base->layers[k].weight.shape != expected.layers[k].weight.shape)
            throw ShapeError("lora base layer " + std::to_string(k) + " is " +
                             nn::shape_str(base->layers[k].weight.shape) + ", spec wants " +
                             nn::shape_str(expected.layers[k].weight.shape));

    model.params = *base;
    const LoraConfig& lora = *spec.lora_config;
    for (std::size_t e = 0; e < registry.entries.size(); e += 2) {
        const ShapeEntry& a_entry = registry.entries[e];
        const std::string target = a_entry.name.substr(0, a_entry.name.find(".lora_A"));
        std::size_t k = base->layers.size();
        for (std::size_t i = 0; i < base->layers.size(); ++i)
            if ("layer" + std::to_string(i) == target) k = i;
        if (k == base->layers.size())
            throw ConsistencyError("lora target '" + target + "' has no base layer");
        LoraAdapter adapter;
        adapter.target_name = target;
        adapter.A = params.tensors[e];
        adapter.B = params.tensors[e + 1];
        adapter.alpha = lora.alpha;
        adapter.r = lora.r;
        model.params.layers[k].weight = merge_lora(base->layers[k].weight, adapter);
    }
    return model;
}

}  // namespace modelgpt
