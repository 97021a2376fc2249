#include <doctest.h>

#include <cmath>

#include "fabricphys/errors.hpp"
#include "fabricphys/metrics.hpp"
#include "fabricphys/rng.hpp"

#include "support/oracles.hpp"
#include "support/test_util.hpp"

using namespace fabricphys;
using testutil::vocabs;

namespace {

FiberComposition comp(std::initializer_list<std::pair<const char*, double>> entries) {
    FiberComposition c;
    for (const auto& [fiber, percent] : entries) c.entries.push_back({fiber, percent});
    return c;
}

std::vector<FiberComposition> random_compositions(std::mt19937_64& rng, std::size_t n) {
    const char* fibers[] = {"Cotton", "Polyester", "Wool", "Silk", "Nylon", "Elastane"};
    std::vector<FiberComposition> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t k = 1 + rng_index(rng, 3);
        FiberComposition c;
        std::vector<std::size_t> picked;
        while (picked.size() < k) {
            std::size_t f = rng_index(rng, 6);
            if (std::find(picked.begin(), picked.end(), f) == picked.end()) picked.push_back(f);
        }
        double remaining = 100.0;
        for (std::size_t j = 0; j < k; ++j) {
            double p = (j + 1 == k) ? remaining : std::floor(remaining * rng_unit(rng) * 0.8) + 1.0;
            remaining -= p;
            c.entries.push_back({fibers[picked[j]], p});
        }
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace

TEST_CASE("material_set_score worked examples") {
    // perfect match
    auto s1 = material_set_score({comp({{"Cotton", 100}})}, {comp({{"Cotton", 100}})});
    CHECK(s1.accuracy == 1.0);
    CHECK(s1.f1 == 1.0);

    // one extra predicted fiber: tp=1, fp=1, fn=0
    auto s2 = material_set_score({comp({{"Cotton", 100}})},
                                 {comp({{"Cotton", 80}, {"Elastane", 20}})});
    CHECK(s2.accuracy == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(s2.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    REQUIRE(s2.per_example.size() == 1);
    CHECK(s2.per_example[0].tp == 1);
    CHECK(s2.per_example[0].fp == 1);
    CHECK(s2.per_example[0].fn == 0);

    // disjoint sets: undefined harmonic mean maps to 0
    auto s3 = material_set_score({comp({{"Cotton", 100}})}, {comp({{"Polyester", 100}})});
    CHECK(s3.accuracy == 0.0);
    CHECK(s3.f1 == 0.0);
}

TEST_CASE("percentage_error worked examples") {
    auto same = percentage_error({comp({{"Cotton", 100}})}, {comp({{"Cotton", 100}})});
    CHECK(same.mae == 0.0);
    CHECK(same.nmae == 0.0);

    auto blend = percentage_error({comp({{"Cotton", 80}, {"Elastane", 20}})},
                                  {comp({{"Cotton", 60}, {"Elastane", 40}})});
    CHECK(blend.mae == doctest::Approx(20.0).epsilon(1e-15));
    CHECK(blend.nmae == doctest::Approx(0.375).epsilon(1e-15));

    auto miss = percentage_error({comp({{"Cotton", 100}})}, {comp({{"Polyester", 100}})});
    CHECK(miss.mae == doctest::Approx(100.0).epsilon(1e-15));
    CHECK(miss.nmae == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("material and percentage metrics match the brute-force reference") {
    std::mt19937_64 rng(991);
    for (int round = 0; round < 10; ++round) {
        auto gt = random_compositions(rng, 100);
        auto pred = random_compositions(rng, 100);
        auto ms = material_set_score(gt, pred);
        CHECK(ms.accuracy == doctest::Approx(oracle::material_accuracy(gt, pred)).epsilon(1e-12));
        CHECK(ms.f1 == doctest::Approx(oracle::material_f1(gt, pred)).epsilon(1e-12));
        auto pe = percentage_error(gt, pred);
        auto [mae_ref, nmae_ref] = oracle::percentage_mae_nmae(gt, pred);
        CHECK(pe.mae == doctest::Approx(mae_ref).epsilon(1e-12));
        CHECK(pe.nmae == doctest::Approx(nmae_ref).epsilon(1e-12));
    }
}

TEST_CASE("categorical_scores worked example") {
    std::vector<std::string> classes = {"knit", "woven", "lining", "others"};
    auto perfect = categorical_scores({"knit", "woven"}, {"knit", "woven"}, classes);
    CHECK(perfect.accuracy == 1.0);
    CHECK(perfect.macro_f1 == 1.0);

    auto partial = categorical_scores({"knit", "knit", "woven"}, {"knit", "woven", "woven"}, classes);
    CHECK(partial.accuracy == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(partial.macro_f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    auto constant = categorical_scores({"knit", "woven", "others"}, {"knit", "knit", "knit"}, classes);
    CHECK(constant.accuracy == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("categorical_scores rejects labels outside the vocabulary") {
    std::vector<std::string> classes = {"knit", "woven"};
    CHECK_THROWS_AS((void)categorical_scores({"knit"}, {"velvet"}, classes), Error);
}

TEST_CASE("macro-F1 is invariant to class enumeration order") {
    std::vector<std::string> gt = {"knit", "woven", "others", "knit", "woven"};
    std::vector<std::string> pred = {"knit", "others", "others", "woven", "woven"};
    auto a = categorical_scores(gt, pred, {"knit", "woven", "lining", "others"});
    auto b = categorical_scores(gt, pred, {"others", "lining", "woven", "knit"});
    CHECK(a.macro_f1 == b.macro_f1);
    CHECK(a.accuracy == b.accuracy);
}

TEST_CASE("categorical metrics match the brute-force reference") {
    std::vector<std::string> classes = {"knit", "woven", "lining", "others"};
    std::mt19937_64 rng(5);
    for (int round = 0; round < 20; ++round) {
        std::vector<std::string> gt, pred;
        for (int i = 0; i < 60; ++i) {
            gt.push_back(classes[rng_index(rng, 4)]);
            pred.push_back(classes[rng_index(rng, 4)]);
        }
        auto score = categorical_scores(gt, pred, classes);
        auto [acc_ref, f1_ref] = oracle::categorical_accuracy_macro_f1(gt, pred);
        CHECK(score.accuracy == doctest::Approx(acc_ref).epsilon(1e-12));
        CHECK(score.macro_f1 == doctest::Approx(f1_ref).epsilon(1e-12));
    }
}

TEST_CASE("continuous_error worked examples") {
    std::vector<double> gt = {0, 10};
    std::vector<double> pred = {1, 9};
    auto err = continuous_error(gt, pred);
    CHECK(err.mae == doctest::Approx(1.0).epsilon(1e-15));
    REQUIRE(err.nmae.has_value());
    CHECK(*err.nmae == doctest::Approx(0.1).epsilon(1e-15));

    std::vector<double> same = {3, 3, 3};
    auto zero_range = continuous_error(same, same);
    CHECK(zero_range.mae == 0.0);
    CHECK_FALSE(zero_range.nmae.has_value());
}

TEST_CASE("chamfer basics") {
    std::vector<Vec3> a = {{0, 0, 0}};
    std::vector<Vec3> b = {{2, 0, 0}};
    CHECK(chamfer(a, a) == 0.0);
    CHECK(chamfer(a, b) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(chamfer(a, b) == chamfer(b, a));
}

TEST_CASE("chamfer scales linearly and matches the reference") {
    std::mt19937_64 rng(31);
    for (int round = 0; round < 5; ++round) {
        std::vector<Vec3> a, b;
        for (int i = 0; i < 40; ++i) {
            a.push_back({rng_unit(rng) * 10, rng_unit(rng) * 10, rng_unit(rng) * 10});
            b.push_back({rng_unit(rng) * 10, rng_unit(rng) * 10, rng_unit(rng) * 10});
        }
        double d = chamfer(a, b);
        CHECK(d == doctest::Approx(oracle::chamfer_ref(a, b)).epsilon(1e-12));
        CHECK(chamfer(b, a) == doctest::Approx(d).epsilon(1e-15));

        std::vector<Vec3> a2 = a, b2 = b;
        for (auto& v : a2) v *= 3.0;
        for (auto& v : b2) v *= 3.0;
        CHECK(chamfer(a2, b2) == doctest::Approx(3.0 * d).epsilon(1e-12));
    }
}

TEST_CASE("chamfer rejects empty clouds") {
    std::vector<Vec3> a = {{0, 0, 0}}, empty;
    CHECK_THROWS_AS((void)chamfer(a, empty), Error);
}

namespace {
TriMesh quad(double size, const Vec3& offset) {
    TriMesh m;
    m.vertices = {offset, offset + Vec3{size, 0, 0}, offset + Vec3{size, size, 0},
                  offset + Vec3{0, size, 0}};
    m.triangles = {{0, 1, 2}, {0, 2, 3}};
    return m;
}

TriMesh random_mesh(std::mt19937_64& rng, int n_tris, double extent) {
    TriMesh m;
    for (int t = 0; t < n_tris; ++t) {
        int base = static_cast<int>(m.vertices.size());
        Vec3 anchor{rng_unit(rng) * extent, rng_unit(rng) * extent, rng_unit(rng) * extent};
        for (int v = 0; v < 3; ++v)
            m.vertices.push_back(anchor + Vec3{(rng_unit(rng) - 0.5) * extent * 0.6,
                                               (rng_unit(rng) - 0.5) * extent * 0.6,
                                               (rng_unit(rng) - 0.5) * extent * 0.6});
        m.triangles.push_back({base, base + 1, base + 2});
    }
    return m;
}
} // namespace

TEST_CASE("voxel_iou basics") {
    auto a = quad(100, {0, 0, 0});
    CHECK(voxel_iou(a, a, 50) == 1.0);

    auto far = quad(100, {10000, 10000, 10000});
    CHECK(voxel_iou(a, far, 50) == 0.0);
}

TEST_CASE("voxel_iou quad offset by half a voxel matches the dense oracle") {
    auto a = quad(100, {0, 0, 0});
    auto b = quad(100, {25, 0, 0});
    double got = voxel_iou(a, b, 50);
    double want = oracle::voxel_iou_dense(a, b, 50);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("voxel_iou translation invariance at voxel multiples") {
    auto a = quad(100, {0, 0, 0});
    auto b = quad(100, {25, 10, 0});
    double base = voxel_iou(a, b, 50);
    Vec3 shift{150, -100, 50}; // multiples of the voxel edge
    auto a2 = a, b2 = b;
    for (auto& v : a2.vertices) v += shift;
    for (auto& v : b2.vertices) v += shift;
    CHECK(voxel_iou(a2, b2, 50) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("voxel_iou matches the dense-grid oracle on random meshes") {
    std::mt19937_64 rng(515);
    for (int round = 0; round < 20; ++round) {
        auto a = random_mesh(rng, 3, 120);
        auto b = random_mesh(rng, 3, 120);
        double got = voxel_iou(a, b, 50);
        double want = oracle::voxel_iou_dense(a, b, 50);
        CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("voxel_iou rejects empty meshes") {
    TriMesh empty;
    auto a = quad(100, {0, 0, 0});
    CHECK_THROWS_AS((void)voxel_iou(a, empty, 50), Error);
}

TEST_CASE("weighted_cross_entropy") {
    std::vector<double> probs = {1.0, 1.0, 1.0};
    std::vector<int> targets = {0, 1, 0};
    std::vector<double> weights = {1.0, 1.0};
    CHECK(weighted_cross_entropy(probs, targets, weights) == 0.0);

    // uniform weights reduce to plain token cross-entropy
    std::vector<double> p2 = {0.5, 0.25};
    std::vector<int> t2 = {0, 1};
    CHECK(weighted_cross_entropy(p2, t2, weights) ==
          doctest::Approx(-(std::log(0.5) + std::log(0.25))).epsilon(1e-15));

    std::vector<double> w2 = {1.0, 2.0};
    CHECK(weighted_cross_entropy(p2, t2, w2) ==
          doctest::Approx(-(std::log(0.5) + 2.0 * std::log(0.25))).epsilon(1e-15));

    std::vector<double> zero = {0.0};
    std::vector<int> tz = {0};
    CHECK_THROWS_AS((void)weighted_cross_entropy(zero, tz, weights), Error);
}

TEST_CASE("inverse_frequency_weights") {
    auto balanced = inverse_frequency_weights({{"a", 5}, {"b", 5}, {"c", 5}});
    for (const auto& [cls, w] : balanced) CHECK(w == doctest::Approx(1.0).epsilon(1e-15));

    auto skewed = inverse_frequency_weights({{"a", 3}, {"b", 1}});
    CHECK(skewed["a"] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(skewed["b"] == doctest::Approx(2.0).epsilon(1e-15));

    auto single = inverse_frequency_weights({{"only", 7}});
    CHECK(single["only"] == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS((void)inverse_frequency_weights({{"a", 0}}), Error);

    // mean weight over the tokens of a balanced corpus is 1
    auto w = inverse_frequency_weights({{"x", 4}, {"y", 4}});
    double token_mean = (4 * w["x"] + 4 * w["y"]) / 8.0;
    CHECK(token_mean == doctest::Approx(1.0).epsilon(1e-15));
}
