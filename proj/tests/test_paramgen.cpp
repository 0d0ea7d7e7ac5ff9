#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "modelgpt/errors.hpp"
#include "modelgpt/nn/finite_diff.hpp"
#include "modelgpt/paramgen/assemble.hpp"
#include "modelgpt/paramgen/generator.hpp"
#include "modelgpt/paramgen/lora.hpp"
#include "modelgpt/paramgen/registry.hpp"

using namespace modelgpt;
using nn::Tensor;

namespace {

ArchitectureSpec mlp_spec(int in, int hidden, int n_layers, int out) {
    ArchitectureSpec spec;
    spec.in_dim = in;
    spec.hidden_dim = hidden;
    spec.n_layers = n_layers;
    spec.out_dim = out;
    return spec;
}

ArchitectureSpec lora_spec(int in, int hidden, int out, int r,
                           std::vector<std::string> targets = {}) {
    ArchitectureSpec spec = mlp_spec(in, hidden, 0, out);
    spec.adapter_mode = AdapterMode::lora;
    LoraConfig cfg;
    cfg.r = r;
    cfg.alpha = 8.0f;
    cfg.target_layers = std::move(targets);
    spec.lora_config = cfg;
    return spec;
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

TEST_CASE("register_shapes lists every tensor in canonical order") {
    auto reg = register_shapes(mlp_spec(4, 8, 1, 3));
    CHECK(reg.total_elements() == 139);  // 4*8+8 + 8*8+8 + 8*3+3
    REQUIRE(reg.entries.size() == 6);
    CHECK(reg.entries[0].name == "layer0.weight");
    CHECK(reg.entries[0].shape == std::vector<int>{8, 4});
    CHECK(reg.entries[1].name == "layer0.bias");
    CHECK(reg.entries[2].name == "layer1.weight");
    CHECK(reg.entries[4].name == "layer2.weight");
    CHECK(reg.entries[5].shape == std::vector<int>{3});

    CHECK(register_shapes(mlp_spec(2, 2, 0, 2)).total_elements() == 12);

    // names unique
    std::vector<std::string> names;
    for (const auto& e : reg.entries) names.push_back(e.name);
    std::sort(names.begin(), names.end());
    CHECK(std::adjacent_find(names.begin(), names.end()) == names.end());
}

TEST_CASE("register_shapes lora mode") {
    auto reg = register_shapes(lora_spec(8, 8, 8, 2, {"layer0"}));
    CHECK(reg.total_elements() == 32);  // A 2x8 + B 8x2
    REQUIRE(reg.entries.size() == 2);
    CHECK(reg.entries[0].name == "layer0.lora_A");
    CHECK(reg.entries[0].shape == std::vector<int>{2, 8});
    CHECK(reg.entries[1].name == "layer0.lora_B");
    CHECK(reg.entries[1].shape == std::vector<int>{8, 2});

    // empty target list adapts every layer
    auto both = register_shapes(lora_spec(3, 4, 2, 2));
    CHECK(both.entries.size() == 4);

    CHECK_THROWS_AS(register_shapes(lora_spec(8, 8, 8, 9, {"layer0"})), ConfigError);
    CHECK_THROWS_AS(register_shapes(lora_spec(8, 8, 8, 2, {"layer9"})), ConfigError);
}

TEST_CASE("generate evaluates one affine head per entry") {
    SUBCASE("bias-only head reproduces the flattened identity") {
        ShapeRegistry reg;
        reg.entries.push_back({"m", {2, 2}, TensorKind::weight, 2});
        auto gen = make_generator(2);
        GeneratorHead head;
        head.weight = Tensor({4, 2});
        head.bias = Tensor({4}, {1.0f, 0.0f, 0.0f, 1.0f});
        gen.heads.emplace("m:2x2", std::move(head));
        auto out = generate(Tensor({2}, {0.3f, -0.7f}), gen, reg);
        REQUIRE(out.tensors.size() == 1);
        CHECK(out.tensors[0].data == std::vector<float>{1.0f, 0.0f, 0.0f, 1.0f});
        CHECK(out.tensors[0].shape == std::vector<int>{2, 2});
    }
    SUBCASE("unit z picks the first weight column plus bias") {
        ShapeRegistry reg;
        reg.entries.push_back({"v", {1, 2}, TensorKind::weight, 2});
        auto gen = make_generator(2);
        GeneratorHead head;
        head.weight = Tensor({2, 2}, {0.5f, -1.0f, 2.0f, 3.0f});
        head.bias = Tensor({2}, {0.25f, -0.25f});
        gen.heads.emplace("v:1x2", std::move(head));
        auto out = generate(Tensor({2}, {1.0f, 0.0f}), gen, reg);
        CHECK(out.tensors[0].data[0] == doctest::Approx(0.75f));   // 0.5 + 0.25
        CHECK(out.tensors[0].data[1] == doctest::Approx(1.75f));   // 2.0 - 0.25
    }
    SUBCASE("same z twice is bitwise identical") {
        std::mt19937_64 rng(2024);
        auto reg = register_shapes(mlp_spec(4, 8, 1, 3));
        auto gen = make_generator(5);
        ensure_heads(gen, reg, rng);
        Tensor z({5}, {0.1f, -0.4f, 0.9f, 0.0f, 0.33f});
        auto a = generate(z, gen, reg);
        auto b = generate(z, gen, reg);
        for (std::size_t i = 0; i < a.tensors.size(); ++i)
            CHECK(a.tensors[i].data == b.tensors[i].data);
    }
    SUBCASE("output element count always equals the registry total") {
        std::mt19937_64 rng(7);
        for (int it = 0; it < 10; ++it) {
            auto reg = register_shapes(mlp_spec(1 + static_cast<int>(rng() % 5),
                                                1 + static_cast<int>(rng() % 8),
                                                static_cast<int>(rng() % 2),
                                                2 + static_cast<int>(rng() % 4)));
            auto gen = make_generator(3);
            ensure_heads(gen, reg, rng);
            Tensor z({3}, {0.5f, 0.5f, 0.5f});
            auto out = generate(z, gen, reg);
            std::size_t n = 0;
            for (const auto& t : out.tensors) n += t.numel();
            CHECK(n == reg.total_elements());
        }
    }
    SUBCASE("missing head is a consistency error") {
        ShapeRegistry reg;
        reg.entries.push_back({"w", {2, 2}, TensorKind::weight, 2});
        auto gen = make_generator(2);
        CHECK_THROWS_AS(generate(Tensor({2}, {0.0f, 0.0f}), gen, reg), ConsistencyError);
        std::mt19937_64 rng(1);
        ensure_heads(gen, reg, rng);
        CHECK_THROWS_AS(generate(Tensor({3}, {0.0f, 0.0f, 0.0f}), gen, reg),
                        ConsistencyError);
    }
}

TEST_CASE("generate_backward matches finite differences") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> dist(-0.8, 0.8);
    const int d = 2;
    ShapeRegistry reg;
    reg.entries.push_back({"w", {2, 2}, TensorKind::weight, 2});
    reg.entries.push_back({"b", {2}, TensorKind::bias, 2});

    // flatten θg as [w-head weight | w-head bias | b-head weight | b-head bias]
    const std::size_t n_params = (4 * d + 4) + (2 * d + 2);
    std::vector<double> flat(n_params);
    for (double& v : flat) v = dist(rng);
    auto rebuild = [&](const std::vector<double>& p) {
        auto gen = make_generator(d);
        std::size_t k = 0;
        for (const auto& entry : reg.entries) {
            GeneratorHead head;
            const int numel = static_cast<int>(entry.numel());
            head.weight = Tensor({numel, d});
            head.bias = Tensor({numel});
            for (float& v : head.weight.data) v = static_cast<float>(p[k++]);
            for (float& v : head.bias.data) v = static_cast<float>(p[k++]);
            gen.heads.emplace(entry.key(), std::move(head));
        }
        return gen;
    };

    Tensor z({d}, {0.6f, -0.2f});
    std::vector<Tensor> upstream;
    upstream.push_back(Tensor({2, 2}));
    upstream.push_back(Tensor({2}));
    for (auto& t : upstream)
        for (float& v : t.data) v = static_cast<float>(dist(rng));

    auto f = [&](const std::vector<double>& p) {
        auto out = generate(z, rebuild(p), reg);
        double s = 0.0;
        for (std::size_t e = 0; e < out.tensors.size(); ++e)
            for (std::size_t i = 0; i < out.tensors[e].numel(); ++i)
                s += static_cast<double>(upstream[e].data[i]) * out.tensors[e].data[i];
        return s;
    };
    auto fd = nn::finite_diff_grad(f, flat, 1e-3);

    auto gen = rebuild(flat);
    auto grads = make_generator_grads(gen);
    Tensor g_z = generate_backward(z, gen, reg, upstream, grads);
    std::vector<double> analytic;
    for (const auto& entry : reg.entries) {
        const auto& hg = grads.heads.at(entry.key());
        analytic.insert(analytic.end(), hg.weight.data.begin(), hg.weight.data.end());
        analytic.insert(analytic.end(), hg.bias.data.begin(), hg.bias.data.end());
    }
    CHECK(rel_err(analytic, fd) < 1e-4);

    // and d loss / d z against its own finite difference
    auto fz = [&](const std::vector<double>& p) {
        Tensor zz({d});
        for (int j = 0; j < d; ++j) zz.data[j] = static_cast<float>(p[j]);
        auto out = generate(zz, gen, reg);
        double s = 0.0;
        for (std::size_t e = 0; e < out.tensors.size(); ++e)
            for (std::size_t i = 0; i < out.tensors[e].numel(); ++i)
                s += static_cast<double>(upstream[e].data[i]) * out.tensors[e].data[i];
        return s;
    };
    auto fdz = nn::finite_diff_grad(fz, {0.6, -0.2}, 1e-3);
    std::vector<double> gz(g_z.data.begin(), g_z.data.end());
    CHECK(rel_err(gz, fdz) < 1e-4);
}

TEST_CASE("merge_lora applies W + (alpha/r) B A") {
    Tensor W({2, 2}, {1.0f, 0.0f, 0.0f, 1.0f});

    SUBCASE("hand case") {
        LoraAdapter ad;
        ad.A = Tensor({1, 2}, {1.0f, 1.0f});
        ad.B = Tensor({2, 1}, {2.0f, 0.0f});
        ad.alpha = 1.0f;
        ad.r = 1;
        auto merged = merge_lora(W, ad);
        CHECK(merged.data == std::vector<float>{3.0f, 2.0f, 0.0f, 1.0f});
    }
    SUBCASE("zero B and zero alpha leave the base untouched") {
        LoraAdapter ad;
        ad.A = Tensor({1, 2}, {5.0f, -5.0f});
        ad.B = Tensor({2, 1});
        ad.alpha = 1.0f;
        ad.r = 1;
        CHECK(merge_lora(W, ad).data == W.data);
        ad.B = Tensor({2, 1}, {2.0f, 3.0f});
        ad.alpha = 0.0f;
        CHECK(merge_lora(W, ad).data == W.data);
    }
    SUBCASE("shape mismatch") {
        LoraAdapter ad;
        ad.A = Tensor({1, 3}, {1.0f, 1.0f, 1.0f});
        ad.B = Tensor({2, 1}, {1.0f, 1.0f});
        ad.r = 1;
        CHECK_THROWS_AS(merge_lora(W, ad), ShapeError);
    }
}

TEST_CASE("merged forward equals base plus adapter path") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
    for (int it = 0; it < 20; ++it) {
        const int out = 2 + static_cast<int>(rng() % 5);
        const int in = 2 + static_cast<int>(rng() % 5);
        const int r = 1 + static_cast<int>(rng() % std::min(out, in));
        Tensor W({out, in});
        for (float& v : W.data) v = dist(rng);
        LoraAdapter ad;
        ad.r = r;
        ad.alpha = 1.0f + static_cast<float>(rng() % 8);
        ad.A = Tensor({r, in});
        ad.B = Tensor({out, r});
        for (float& v : ad.A.data) v = dist(rng);
        for (float& v : ad.B.data) v = dist(rng);
        Tensor x({in});
        for (float& v : x.data) v = dist(rng);

        auto merged = merge_lora(W, ad);
        const double scale = static_cast<double>(ad.alpha) / ad.r;
        for (int o = 0; o < out; ++o) {
            double lhs = 0.0, base = 0.0;
            for (int i = 0; i < in; ++i) {
                lhs += static_cast<double>(merged.at(o, i)) * x.data[i];
                base += static_cast<double>(W.at(o, i)) * x.data[i];
            }
            double low = 0.0;
            for (int k = 0; k < r; ++k) {
                double ax = 0.0;
                for (int i = 0; i < in; ++i)
                    ax += static_cast<double>(ad.A.at(k, i)) * x.data[i];
                low += static_cast<double>(ad.B.at(o, k)) * ax;
            }
            CHECK(lhs == doctest::Approx(base + scale * low).epsilon(1e-5));
        }
    }
}

TEST_CASE("assemble_model full weights") {
    std::mt19937_64 rng(3);
    auto spec = mlp_spec(4, 8, 1, 3);
    auto reg = register_shapes(spec);
    auto gen = make_generator(5);
    ensure_heads(gen, reg, rng);
    Tensor z({5}, {0.2f, 0.4f, -0.1f, 0.0f, 1.0f});
    auto params = generate(z, gen, reg);
    auto model = assemble_model(spec, params);

    REQUIRE(model.params.layers.size() == 3);
    CHECK(model.params.layers[0].weight.shape == std::vector<int>{8, 4});
    CHECK(model.params.layers[2].bias.shape == std::vector<int>{3});

    Tensor x({2, 4}, {0.1f, 0.2f, 0.3f, 0.4f, -0.1f, -0.2f, -0.3f, -0.4f});
    Tensor y = nn::mlp_forward(model.params, x);
    CHECK(y.shape == std::vector<int>{2, 3});

    // wrong tensor count refuses to assemble
    ParameterSet short_set;
    short_set.tensors.assign(params.tensors.begin(), params.tensors.end() - 1);
    CHECK_THROWS_AS(assemble_model(spec, short_set), ConsistencyError);
}

TEST_CASE("assemble_model lora") {
    std::mt19937_64 rng(9);
    auto spec = lora_spec(3, 4, 2, 2);
    auto base = nn::make_mlp(3, 4, 0, 2);
    nn::init_uniform_fanin(base, rng);

    SUBCASE("missing base is an input error") {
        ParameterSet params;
        params.tensors = {Tensor({2, 3}), Tensor({4, 2}), Tensor({2, 4}), Tensor({2, 2})};
        CHECK_THROWS_AS(assemble_model(spec, params), InputError);
    }
    SUBCASE("zero-B adapters reproduce the base forward bitwise") {
        ParameterSet params;
        params.tensors.push_back(Tensor({2, 3}, {1.0f, -1.0f, 0.5f, 0.5f, 2.0f, 0.0f}));
        params.tensors.push_back(Tensor({4, 2}));  // B zero
        params.tensors.push_back(Tensor({2, 4}, std::vector<float>(8, 0.3f)));
        params.tensors.push_back(Tensor({2, 2}));  // B zero
        auto model = assemble_model(spec, params, &base);
        Tensor x({2, 3}, {0.5f, -0.25f, 1.0f, 0.0f, 0.75f, -2.0f});
        CHECK(nn::mlp_forward(model.params, x).data == nn::mlp_forward(base, x).data);
        // biases come straight from the base in lora mode
        CHECK(model.params.layers[0].bias.data == base.layers[0].bias.data);
    }
    SUBCASE("adapter forward equals the base-plus-BA oracle") {
        ParameterSet params;
        params.tensors = {Tensor({2, 3}), Tensor({4, 2}), Tensor({2, 4}), Tensor({2, 2})};
        std::uniform_real_distribution<float> dist(-0.5f, 0.5f);
        for (auto& t : params.tensors)
            for (float& v : t.data) v = dist(rng);
        auto model = assemble_model(spec, params, &base);
        // layer0 merged by hand
        LoraAdapter ad;
        ad.A = params.tensors[0];
        ad.B = params.tensors[1];
        ad.alpha = spec.lora_config->alpha;
        ad.r = spec.lora_config->r;
        auto merged0 = merge_lora(base.layers[0].weight, ad);
        for (std::size_t i = 0; i < merged0.numel(); ++i)
            CHECK(model.params.layers[0].weight.data[i] ==
                  doctest::Approx(merged0.data[i]).epsilon(1e-6));
    }
}
