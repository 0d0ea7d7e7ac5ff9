#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "modelgpt/modelgen/modelgen.hpp"
#include "modelgpt/nn/tensor.hpp"

namespace modelgpt {

// Counts batch reads per reader ("trainer", "bench", ...) so tests can prove
// a zero-shot task was never touched by the training path.
struct AccessLog {
    std::map<std::string, int> reads;
};

struct Dataset {
    std::string name;
    nn::Tensor features;   // [n, f], standardized on the train split
    std::vector<int> labels;  // classification: 0..C-1
    nn::Tensor targets;       // regression: [n, 1]
    std::vector<int> train_idx, eval_idx, test_idx;
    TaskType task;
    std::string domain_tag;
    std::shared_ptr<AccessLog> log = std::make_shared<AccessLog>();

    int n_rows() const { return features.rows(); }
    int n_features() const { return features.cols(); }
};

struct Batch {
    nn::Tensor x;             // [k, f]
    std::vector<int> labels;  // classification
    nn::Tensor targets;       // regression [k, 1]
};

// Copy the given rows out of the dataset, logging the read under `reader`.
Batch gather(const Dataset& ds, const std::vector<int>& rows, const std::string& reader);

// 70/15/15 split by seeded shuffle, then standardize every feature column to
// zero mean / unit variance measured on the train split (constant columns
// are left centered). Called by every loader.
void split_and_standardize(Dataset& ds, std::uint64_t seed);

struct CsvSchema {
    // empty = last column
    std::string label_column;
    TaskKind kind = TaskKind::classification;
    std::uint64_t split_seed = 2024;
};

// Header CSV -> Dataset. Numeric feature columns parse as-is; non-numeric
// ones one-hot encode in order of first appearance. Classification labels
// map to 0..C-1 by sorted distinct value. Throws IngestionError (bad cell,
// naming row and column) or InputError (single-class labels).
Dataset load_csv_task(const std::string& path, const CsvSchema& schema = {});

}  // namespace modelgpt
