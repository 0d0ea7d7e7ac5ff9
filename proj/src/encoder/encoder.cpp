#include "modelgpt/encoder/encoder.hpp"

#include <cctype>
#include <cmath>

#include "modelgpt/errors.hpp"

namespace modelgpt {

EncoderParams make_encoder(int vocab, int d0) {
    if (vocab < 1 || d0 < 1)
        throw ConfigError("encoder needs positive vocab and width, got V=" +
                          std::to_string(vocab) + " d0=" + std::to_string(d0));
    EncoderParams enc;
    enc.cls = nn::Tensor({d0});
    enc.token_table = nn::Tensor({vocab, d0});
    enc.mix = {nn::Tensor({d0, d0}), nn::Tensor({d0})};
    return enc;
}

void init_encoder(EncoderParams& enc, std::mt19937_64& rng) {
    const float bound = 1.0f / std::sqrt(static_cast<float>(enc.d0()));
    std::uniform_real_distribution<float> dist(-bound, bound);
    for (float& v : enc.cls.data) v = dist(rng);
    for (float& v : enc.token_table.data) v = dist(rng);
    for (float& v : enc.mix.weight.data) v = dist(rng);
    for (float& v : enc.mix.bias.data) v = 0.0f;
}

std::vector<std::string> tokenize(const std::string& sentence) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : sentence) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else if (!cur.empty()) {
            tokens.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    return tokens;
}

std::uint64_t fnv1a64(const std::string& token) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : token) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

int token_id(const std::string& token, int vocab) {
    return static_cast<int>(fnv1a64(token) % static_cast<std::uint64_t>(vocab));
}

nn::Tensor encode_traced(const Requirement& requirement, const EncoderParams& enc,
                         EncodeTrace& trace) {
    const int d0 = enc.d0();
    trace.ids.clear();
    for (const auto& tok : tokenize(requirement.sentence))
        trace.ids.push_back(token_id(tok, enc.vocab()));

    // uniform attention: position 0 becomes the mean over CLS + all tokens
    const double count = 1.0 + static_cast<double>(trace.ids.size());
    trace.pooled = nn::Tensor({d0});
    for (int j = 0; j < d0; ++j) {
        double acc = enc.cls.data[j];
        for (int id : trace.ids) acc += enc.token_table.at(id, j);
        trace.pooled.data[j] = static_cast<float>(acc / count);
    }

    // learned linear on the pooled first position
    nn::Tensor z0({d0});
    for (int o = 0; o < d0; ++o) {
        double acc = enc.mix.bias.data[o];
        for (int j = 0; j < d0; ++j) acc += enc.mix.weight.at(o, j) * trace.pooled.data[j];
        z0.data[o] = static_cast<float>(acc);
    }
    nn::ensure_finite(z0, "encoder output");
    return z0;
}

nn::Tensor encode(const Requirement& requirement, const EncoderParams& enc) {
    EncodeTrace trace;
    return encode_traced(requirement, enc, trace);
}

EncoderGrads make_encoder_grads(const EncoderParams& enc) {
    EncoderGrads g;
    g.cls = nn::Tensor(enc.cls.shape);
    g.token_table = nn::Tensor(enc.token_table.shape);
    g.mix = {nn::Tensor(enc.mix.weight.shape), nn::Tensor(enc.mix.bias.shape)};
    return g;
}

void encode_backward(const EncoderParams& enc, const EncodeTrace& trace,
                     const nn::Tensor& g_z0, EncoderGrads& grads) {
    const int d0 = enc.d0();
    if (static_cast<int>(g_z0.numel()) != d0)
        throw ShapeError("encoder backward expects gradient of dim " + std::to_string(d0) +
                         ", got " + nn::shape_str(g_z0.shape));

    // through the linear layer
    nn::Tensor g_pooled({d0});
    for (int o = 0; o < d0; ++o) {
        grads.mix.bias.data[o] += g_z0.data[o];
        for (int j = 0; j < d0; ++j) {
            grads.mix.weight.at(o, j) += g_z0.data[o] * trace.pooled.data[j];
            g_pooled.data[j] += enc.mix.weight.at(o, j) * g_z0.data[o];
        }
    }

    // through the mean: every position gets an equal share
    const float share = 1.0f / (1.0f + static_cast<float>(trace.ids.size()));
    for (int j = 0; j < d0; ++j) grads.cls.data[j] += g_pooled.data[j] * share;
    for (int id : trace.ids)
        for (int j = 0; j < d0; ++j) grads.token_table.at(id, j) += g_pooled.data[j] * share;
}

}  // namespace modelgpt
