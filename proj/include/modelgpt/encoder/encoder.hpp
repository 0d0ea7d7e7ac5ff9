#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "modelgpt/nn/mlp.hpp"
#include "modelgpt/nn/tensor.hpp"
#include "modelgpt/requirement/requirement.hpp"

namespace modelgpt {

// θe: hashed token embeddings pooled under uniform attention, then one
// learned linear layer. z0 is the first (CLS) position after pooling.
struct EncoderParams {
    nn::Tensor cls;          // [d0]
    nn::Tensor token_table;  // [V, d0]
    nn::DenseLayer mix;      // learned linear d0 -> d0

    int d0() const { return cls.shape[0]; }
    int vocab() const { return token_table.shape[0]; }
};

EncoderParams make_encoder(int vocab, int d0);
void init_encoder(EncoderParams& enc, std::mt19937_64& rng);

// lowercase, split on non-alphanumeric runs, drop empties
std::vector<std::string> tokenize(const std::string& sentence);

// 64-bit FNV-1a; fixed constants keep ids stable across runs and platforms
std::uint64_t fnv1a64(const std::string& token);
int token_id(const std::string& token, int vocab);

// forward pieces kept for the backward pass
struct EncodeTrace {
    std::vector<int> ids;  // hashed token ids, CLS excluded
    nn::Tensor pooled;     // [d0], mean of CLS + token embeddings
};

nn::Tensor encode(const Requirement& requirement, const EncoderParams& enc);
nn::Tensor encode_traced(const Requirement& requirement, const EncoderParams& enc,
                         EncodeTrace& trace);

// gradient accumulators mirroring EncoderParams
struct EncoderGrads {
    nn::Tensor cls;
    nn::Tensor token_table;
    nn::DenseLayer mix;
};

EncoderGrads make_encoder_grads(const EncoderParams& enc);

// accumulate d loss / d θe given d loss / d z0
void encode_backward(const EncoderParams& enc, const EncodeTrace& trace,
                     const nn::Tensor& g_z0, EncoderGrads& grads);

}  // namespace modelgpt
