#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "modelgpt/encoder/encoder.hpp"
#include "modelgpt/encoder/transform.hpp"
#include "modelgpt/errors.hpp"
#include "modelgpt/nn/finite_diff.hpp"

using namespace modelgpt;
using nn::Tensor;

namespace {

Requirement req(const std::string& sentence) {
    Requirement r;
    r.sentence = sentence;
    return r;
}

void set_identity(nn::DenseLayer& layer) {
    const int d = layer.weight.shape[0];
    for (float& v : layer.weight.data) v = 0.0f;
    for (int i = 0; i < d; ++i) layer.weight.at(i, i) = 1.0f;
    for (float& v : layer.bias.data) v = 0.0f;
}

double rel_err(const std::vector<double>& a, const std::vector<double>& b) {
    REQUIRE(a.size() == b.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num) / std::max(std::sqrt(den), 1e-12);
}

}  // namespace

TEST_CASE("tokenize lowercases and splits on non-alphanumeric runs") {
    CHECK(tokenize("Binary, sentiment-analysis!") ==
          std::vector<std::string>{"binary", "sentiment", "analysis"});
    CHECK(tokenize("A") == std::vector<std::string>{"a"});
    CHECK(tokenize("  .  ").empty());
    CHECK(tokenize("3 classes on 4-dimensional rows") ==
          std::vector<std::string>{"3", "classes", "on", "4", "dimensional", "rows"});
}

TEST_CASE("fnv1a64 uses the fixed offset and prime") {
    CHECK(fnv1a64("binary") == 0xee885e7447d3d73cULL);
    CHECK(fnv1a64("classification") == 0xc7b878dd6f5e5a01ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(token_id("binary", 4096) == 1852);
    CHECK(token_id("classification", 4096) == 2561);
    // pure function: same token, same id
    CHECK(token_id("binary", 4096) == token_id("binary", 4096));
}

TEST_CASE("encode pools CLS with token embeddings under uniform attention") {
    std::mt19937_64 rng(3);
    auto enc = make_encoder(64, 4);
    init_encoder(enc, rng);
    set_identity(enc.mix);

    SUBCASE("no tokens: z0 is exactly the CLS embedding") {
        Tensor z0 = encode(req("  .  "), enc);
        CHECK(z0.data == enc.cls.data);
    }
    SUBCASE("one token: z0 is the CLS/token mean") {
        Tensor z0 = encode(req("flowers"), enc);
        const int id = token_id("flowers", enc.vocab());
        for (int j = 0; j < enc.d0(); ++j) {
            const float expected =
                static_cast<float>((static_cast<double>(enc.cls.data[j]) +
                                    enc.token_table.at(id, j)) / 2.0);
            CHECK(z0.data[j] == expected);
        }
    }
    SUBCASE("same sentence twice is bitwise identical") {
        Tensor a = encode(req("This is a tabular regression task."), enc);
        Tensor b = encode(req("This is a tabular regression task."), enc);
        CHECK(a.data == b.data);
    }
}

TEST_CASE("distinct task-type sentences do not collapse") {
    std::mt19937_64 rng(5);
    auto enc = make_encoder(4096, 64);
    init_encoder(enc, rng);
    Tensor a = encode(req("This is a tabular classification into 3 classes task."), enc);
    Tensor b = encode(req("This is a tabular regression task."), enc);
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (int j = 0; j < enc.d0(); ++j) {
        dot += static_cast<double>(a.data[j]) * b.data[j];
        na += static_cast<double>(a.data[j]) * a.data[j];
        nb += static_cast<double>(b.data[j]) * b.data[j];
    }
    CHECK(dot / std::sqrt(na * nb) < 1.0 - 1e-6);
}

TEST_CASE("transform identity and zero configurations") {
    auto map = make_transform(3, 3);
    set_identity(map.net.layers[0]);
    set_identity(map.net.layers[1]);
    Tensor z0({3}, {0.5f, 0.0f, 2.0f});  // non-negative so relu is transparent
    Tensor z = transform(z0, map);
    CHECK(z.data == z0.data);

    auto zeroed = make_transform(3, 2);
    zeroed.net.layers[1].bias.data = {7.0f, -1.0f};
    Tensor z2 = transform(z0, zeroed);
    CHECK(z2.data == std::vector<float>{7.0f, -1.0f});

    CHECK_THROWS_AS(transform(Tensor({2}, {1.0f, 2.0f}), map), ShapeError);
}

TEST_CASE("transform matches an independent oracle") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
    for (int it = 0; it < 10; ++it) {
        const int d0 = 2 + static_cast<int>(rng() % 4);
        const int d = 2 + static_cast<int>(rng() % 4);
        auto map = make_transform(d0, d);
        init_transform(map, rng);
        Tensor z0({d0});
        for (float& v : z0.data) v = dist(rng);
        Tensor z = transform(z0, map);

        // plain double-precision recomputation
        std::vector<double> h(d);
        for (int o = 0; o < d; ++o) {
            double acc = map.net.layers[0].bias.data[o];
            for (int j = 0; j < d0; ++j) acc += map.net.layers[0].weight.at(o, j) * z0.data[j];
            h[o] = std::max(acc, 0.0);
        }
        for (int o = 0; o < d; ++o) {
            double acc = map.net.layers[1].bias.data[o];
            for (int j = 0; j < d; ++j) acc += map.net.layers[1].weight.at(o, j) * h[j];
            CHECK(z.data[o] == doctest::Approx(acc).epsilon(1e-6));
        }
    }
}

TEST_CASE("encode gradients match finite differences") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> dist(-0.8, 0.8);
    const int V = 5, d0 = 4;
    const Requirement r = req("tiny classification drill");

    // flatten θe as [cls | token_table | mix.weight | mix.bias]
    std::vector<double> flat(static_cast<std::size_t>(d0 + V * d0 + d0 * d0 + d0));
    for (double& v : flat) v = dist(rng);
    auto rebuild = [&](const std::vector<double>& p) {
        auto enc = make_encoder(V, d0);
        std::size_t k = 0;
        for (float& v : enc.cls.data) v = static_cast<float>(p[k++]);
        for (float& v : enc.token_table.data) v = static_cast<float>(p[k++]);
        for (float& v : enc.mix.weight.data) v = static_cast<float>(p[k++]);
        for (float& v : enc.mix.bias.data) v = static_cast<float>(p[k++]);
        return enc;
    };

    Tensor u({d0});
    for (float& v : u.data) v = static_cast<float>(dist(rng));
    auto f = [&](const std::vector<double>& p) {
        Tensor z0 = encode(r, rebuild(p));
        double s = 0.0;
        for (int j = 0; j < d0; ++j) s += static_cast<double>(u.data[j]) * z0.data[j];
        return s;
    };
    auto fd = nn::finite_diff_grad(f, flat, 1e-3);

    auto enc = rebuild(flat);
    EncodeTrace trace;
    encode_traced(r, enc, trace);
    auto grads = make_encoder_grads(enc);
    encode_backward(enc, trace, u, grads);
    std::vector<double> analytic;
    analytic.insert(analytic.end(), grads.cls.data.begin(), grads.cls.data.end());
    analytic.insert(analytic.end(), grads.token_table.data.begin(), grads.token_table.data.end());
    analytic.insert(analytic.end(), grads.mix.weight.data.begin(), grads.mix.weight.data.end());
    analytic.insert(analytic.end(), grads.mix.bias.data.begin(), grads.mix.bias.data.end());
    CHECK(rel_err(analytic, fd) < 1e-4);
}

TEST_CASE("transform gradients match finite differences") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dist(-0.9, 0.9);
    const int d0 = 4, d = 3;

    int done = 0;
    while (done < 5) {
        std::vector<double> flat(static_cast<std::size_t>(d * d0 + d + d * d + d));
        for (double& v : flat) v = dist(rng);
        auto rebuild = [&](const std::vector<double>& p) {
            auto map = make_transform(d0, d);
            std::size_t k = 0;
            for (auto& layer : map.net.layers) {
                for (float& v : layer.weight.data) v = static_cast<float>(p[k++]);
                for (float& v : layer.bias.data) v = static_cast<float>(p[k++]);
            }
            return map;
        };
        Tensor z0({d0});
        for (float& v : z0.data) v = static_cast<float>(dist(rng));
        auto map = rebuild(flat);

        nn::MlpCache cache;
        transform_traced(z0, map, cache);
        bool near_kink = false;
        for (float v : cache.preacts[0].data)
            if (std::abs(v) < 1e-2f) near_kink = true;
        if (near_kink) continue;
        ++done;

        Tensor u({d});
        for (float& v : u.data) v = static_cast<float>(dist(rng));
        auto f = [&](const std::vector<double>& p) {
            Tensor z = transform(z0, rebuild(p));
            double s = 0.0;
            for (int j = 0; j < d; ++j) s += static_cast<double>(u.data[j]) * z.data[j];
            return s;
        };
        auto fd = nn::finite_diff_grad(f, flat, 3e-3);

        auto grads = transform_backward(map, cache, u);
        std::vector<double> analytic;
        for (const auto& layer : grads.layers) {
            analytic.insert(analytic.end(), layer.weight.data.begin(), layer.weight.data.end());
            analytic.insert(analytic.end(), layer.bias.data.begin(), layer.bias.data.end());
        }
        CHECK(rel_err(analytic, fd) < 1e-4);

        // d loss / d z0 checked the same way
        auto fz = [&](const std::vector<double>& p) {
            Tensor zz({d0});
            for (int j = 0; j < d0; ++j) zz.data[j] = static_cast<float>(p[j]);
            Tensor z = transform(zz, map);
            double s = 0.0;
            for (int j = 0; j < d; ++j) s += static_cast<double>(u.data[j]) * z.data[j];
            return s;
        };
        std::vector<double> zflat(z0.data.begin(), z0.data.end());
        auto fdz = nn::finite_diff_grad(fz, zflat, 3e-3);
        std::vector<double> analytic_z(grads.input.data.begin(), grads.input.data.end());
        CHECK(rel_err(analytic_z, fdz) < 1e-4);
    }
}
