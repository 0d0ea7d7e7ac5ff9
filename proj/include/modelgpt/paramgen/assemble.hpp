#pragma once

#include <string>

#include "modelgpt/modelgen/modelgen.hpp"
#include "modelgpt/nn/mlp.hpp"
#include "modelgpt/paramgen/generator.hpp"
#include "modelgpt/paramgen/registry.hpp"

namespace modelgpt {

// Where a generated model came from; not part of the serialized bytes.
struct Provenance {
    std::string requirement;
    std::string checkpoint_id;
    std::string timestamp;
};

// A ready-to-run target model.
struct GeneratedModel {
    ArchitectureSpec spec;
    nn::MlpParams params;
    Provenance provenance;
};

// Turn generated tensors into a runnable model. full_weights mode needs no
// base; lora mode merges the generated (A, B) pairs into a copy of base
// (InputError when base is missing, ShapeError when it does not match spec).
GeneratedModel assemble_model(const ArchitectureSpec& spec, const ParameterSet& params,
                              const nn::MlpParams* base = nullptr);

}  // namespace modelgpt
