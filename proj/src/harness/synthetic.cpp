#include "modelgpt/harness/synthetic.hpp"

#include <cmath>
#include <random>

#include "modelgpt/errors.hpp"

namespace modelgpt {

namespace {

// class centers, per-dimension spread and a rotation shared between a task
// and its domain-shift sibling
struct BlobGeometry {
    std::vector<std::vector<float>> centers;  // [K][f]
    std::vector<float> sigma;                 // [f]
    std::vector<std::vector<float>> rot;      // [f][f], orthonormal rows
};

BlobGeometry make_geometry(const BlobSpec& spec, std::mt19937_64& rng) {
    const int f = spec.n_features;
    const int K = spec.n_classes;
    std::normal_distribution<double> gauss(0.0, 1.0);

    BlobGeometry geo;

    // centers: random directions scaled to the separation radius, re-drawn
    // while any two fall closer than 0.9 x separation (bounded attempts keep
    // this deterministic and total)
    for (int k = 0; k < K; ++k) {
        std::vector<float> best;
        double best_min = -1.0;
        for (int attempt = 0; attempt < 64; ++attempt) {
            std::vector<float> c(f);
            double norm = 0.0;
            for (int j = 0; j < f; ++j) {
                c[j] = static_cast<float>(gauss(rng));
                norm += static_cast<double>(c[j]) * c[j];
            }
            norm = std::sqrt(std::max(norm, 1e-9));
            for (int j = 0; j < f; ++j)
                c[j] = static_cast<float>(c[j] / norm * spec.separation);
            double min_dist = 1e30;
            for (const auto& other : geo.centers) {
                double d2 = 0.0;
                for (int j = 0; j < f; ++j) {
                    const double d = static_cast<double>(c[j]) - other[j];
                    d2 += d * d;
                }
                min_dist = std::min(min_dist, std::sqrt(d2));
            }
            if (min_dist > best_min) {
                best_min = min_dist;
                best = c;
            }
            if (min_dist >= 0.9 * spec.separation) break;
        }
        geo.centers.push_back(best);
    }

    std::uniform_real_distribution<float> spread(0.5f, 1.5f);
    for (int j = 0; j < f; ++j) geo.sigma.push_back(spread(rng));

    // Gram-Schmidt on a random matrix gives the rotation
    geo.rot.assign(f, std::vector<float>(f));
    for (int i = 0; i < f; ++i) {
        std::vector<double> v(f);
        for (int j = 0; j < f; ++j) v[j] = gauss(rng);
        for (int p = 0; p < i; ++p) {
            double dot = 0.0;
            for (int j = 0; j < f; ++j) dot += v[j] * geo.rot[p][j];
            for (int j = 0; j < f; ++j) v[j] -= dot * geo.rot[p][j];
        }
        double norm = 0.0;
        for (int j = 0; j < f; ++j) norm += v[j] * v[j];
        norm = std::sqrt(std::max(norm, 1e-9));
        for (int j = 0; j < f; ++j) geo.rot[i][j] = static_cast<float>(v[j] / norm);
    }
    return geo;
}

Dataset realize_blobs(const BlobSpec& spec, const BlobGeometry& geo,
                      const std::vector<float>& offset, std::mt19937_64& rng) {
    const int f = spec.n_features;
    const int K = spec.n_classes;
    const int n = spec.n_rows;
    std::normal_distribution<double> gauss(0.0, 1.0);

    Dataset ds;
    ds.name = spec.name;
    ds.domain_tag = spec.domain_tag;
    ds.features = nn::Tensor({n, f});
    ds.task = {TaskKind::classification, K, f};

    for (int r = 0; r < n; ++r) {
        const int k = r % K;   // balanced classes
        ds.labels.push_back(k);
        std::vector<double> noise(f);
        for (int j = 0; j < f; ++j) noise[j] = gauss(rng) * geo.sigma[j];
        for (int j = 0; j < f; ++j) {
            double v = geo.centers[k][j] + (offset.empty() ? 0.0f : offset[j]);
            for (int m = 0; m < f; ++m) v += geo.rot[j][m] * noise[m];
            ds.features.at(r, j) = static_cast<float>(v);
        }
    }

    split_and_standardize(ds, spec.seed ^ 0x5eed);
    return ds;
}

}  // namespace

Dataset make_blob_task(const BlobSpec& spec) {
    if (spec.n_features < 1 || spec.n_classes < 2 || spec.n_rows < spec.n_classes)
        throw InputError("blob spec needs >=1 feature, >=2 classes and enough rows");
    std::mt19937_64 rng(spec.seed);
    const BlobGeometry geo = make_geometry(spec, rng);
    return realize_blobs(spec, geo, {}, rng);
}

SyntheticSuite make_synthetic_suite(std::uint64_t seed, int k_tasks) {
    if (k_tasks < 2)
        throw InputError("synthetic suite needs at least 2 tasks, got " +
                         std::to_string(k_tasks));

    SyntheticSuite suite;
    for (int i = 0; i < k_tasks; ++i) {
        BlobSpec spec;
        if (i == 0) {
            spec.n_features = 5;
            spec.n_classes = 3;
            spec.separation = 5.0f;
        } else {
            spec.n_features = 2 + (i * 3) % 7;           // 2..8
            spec.n_classes = 2 + i % 4;                  // 2..5
            spec.separation = 4.0f + static_cast<float>(i % 3);
        }
        spec.n_rows = 256;
        spec.seed = seed + static_cast<std::uint64_t>(i) * 7919;
        spec.name = "synth" + std::to_string(i);
        spec.domain_tag = "synthetic blob domain " + std::to_string(i);

        std::mt19937_64 rng(spec.seed);
        const BlobGeometry geo = make_geometry(spec, rng);

        TaskRequirementPair pair;
        pair.dataset = realize_blobs(spec, geo, {}, rng);
        pair.requirement = fallback_template(
            {TaskKind::classification, spec.n_features, spec.n_classes, spec.domain_tag});
        suite.pairs.push_back(std::move(pair));

        // sibling: every center moves by the same offset, fresh noise
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<float> offset(spec.n_features);
        double norm = 0.0;
        for (auto& v : offset) {
            v = static_cast<float>(gauss(rng));
            norm += static_cast<double>(v) * v;
        }
        norm = std::sqrt(std::max(norm, 1e-9));
        for (auto& v : offset)
            v = static_cast<float>(v / norm * 0.3 * spec.separation);

        BlobSpec drifted = spec;
        drifted.name = spec.name + "_drift";
        drifted.domain_tag = spec.domain_tag + " drift";
        drifted.seed = spec.seed ^ 0xd81f7;
        TaskRequirementPair sibling;
        sibling.dataset = realize_blobs(drifted, geo, offset, rng);
        sibling.requirement = fallback_template(
            {TaskKind::classification, spec.n_features, spec.n_classes, drifted.domain_tag});
        suite.siblings.push_back(std::move(sibling));
    }
    return suite;
}

}  // namespace modelgpt
