#pragma once

#include <string>
#include <vector>

#include "modelgpt/modelgen/modelgen.hpp"

namespace modelgpt {

enum class TensorKind { weight, bias, lora_A, lora_B };

// One target tensor the generator has to produce.
struct ShapeEntry {
    std::string name;        // e.g. "layer0.weight"
    std::vector<int> shape;
    TensorKind kind = TensorKind::weight;
    int fan_in = 1;          // of the target tensor, drives head bias init

    // dictionary key for head sharing: same name and shape, same head
    std::string key() const;
    std::size_t numel() const;
};

// Canonically ordered list of every tensor a spec needs: layer index first,
// weight before bias (A before B in lora mode).
struct ShapeRegistry {
    std::vector<ShapeEntry> entries;
    std::size_t total_elements() const;
};

// full_weights: every mlp weight and bias. lora: one (A, B) pair per target
// layer; everything else stays with the base model. Throws ConfigError when
// the lora rank exceeds a target's smaller dimension.
ShapeRegistry register_shapes(const ArchitectureSpec& spec);

}  // namespace modelgpt
