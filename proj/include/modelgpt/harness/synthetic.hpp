#pragma once

#include <cstdint>
#include <vector>

#include "modelgpt/trainer/pair.hpp"

namespace modelgpt {

// Knobs for one Gaussian-blob classification task.
struct BlobSpec {
    int n_features = 5;
    int n_classes = 3;
    int n_rows = 256;
    float separation = 5.0f;  // scale of the class-center spread, in sigmas
    std::uint64_t seed = 2024;
    std::string name = "blobs";
    std::string domain_tag = "synthetic blobs";
};

// Rotated anisotropic Gaussian blobs around well-separated class centers,
// already split and standardized.
Dataset make_blob_task(const BlobSpec& spec);

// Training pairs plus one domain-shift sibling per pair. A sibling keeps its
// source's class structure but translates every center by a common offset
// (~0.3 * separation) and tags its domain as drifted, standing in for the
// held-out-domain protocol.
struct SyntheticSuite {
    std::vector<TaskRequirementPair> pairs;
    std::vector<TaskRequirementPair> siblings;
};

SyntheticSuite make_synthetic_suite(std::uint64_t seed, int k_tasks);

}  // namespace modelgpt
