// Acceptance suite: one check per release criterion, each printing a
// [PASS]/[FAIL] line. Exits non-zero if any criterion fails.
//
// Usage: acceptance <path-to-cli-binary> <data-dir>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fabricphys/clothsim.hpp"
#include "fabricphys/docs.hpp"
#include "fabricphys/errors.hpp"
#include "fabricphys/metrics.hpp"
#include "fabricphys/physmap.hpp"

#include "support/oracles.hpp"
#include "support/test_util.hpp"

using namespace fabricphys;
namespace fs = std::filesystem;

namespace {

std::string g_cli_path;
std::string g_data_dir;
int g_failures = 0;

struct Criterion {
    int number;
    std::string name;
    bool passed = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            passed = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

void run_criterion(int number, const std::string& name, const std::function<void(Criterion&)>& body) {
    Criterion c{number, name};
    try {
        body(c);
    } catch (const std::exception& e) {
        c.passed = false;
        c.detail = std::string("exception: ") + e.what();
    }
    if (c.passed) {
        std::printf("[PASS] criterion %2d: %s\n", c.number, c.name.c_str());
    } else {
        std::printf("[FAIL] criterion %2d: %s -- %s\n", c.number, c.name.c_str(), c.detail.c_str());
        ++g_failures;
    }
    std::fflush(stdout);
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    std::string cmd = g_cli_path + " --data-dir " + g_data_dir + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
}

// --- criterion 1: parsing round trip -------------------------------------------

void criterion_parsing(Criterion& c) {
    const auto& vocabs = testutil::vocabs();
    auto start = std::chrono::steady_clock::now();

    std::mt19937_64 rng(20260808);
    const auto& fibers = vocabs.fibers.canonical();
    int rounds = 0;
    for (int iter = 0; iter < 1000; ++iter) {
        std::size_t n = 1 + rng_index(rng, 4);
        std::vector<std::string> chosen;
        while (chosen.size() < n) {
            const auto& f = fibers[rng_index(rng, fibers.size())];
            if (std::find(chosen.begin(), chosen.end(), f) == chosen.end()) chosen.push_back(f);
        }
        // percentages in tenths of a percent summing to exactly 100
        std::vector<double> pct(n);
        long remaining = 1000;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            long max_take = remaining - static_cast<long>(n - i - 1);
            long take = 1 + static_cast<long>(rng_index(rng, static_cast<std::size_t>(max_take)));
            pct[i] = static_cast<double>(take) / 10.0;
            remaining -= take;
        }
        pct[n - 1] = static_cast<double>(remaining) / 10.0;

        std::vector<std::pair<std::string, double>> entries;
        for (std::size_t i = 0; i < n; ++i) entries.emplace_back(chosen[i], pct[i]);
        auto comp = make_composition(entries, vocabs);
        auto rendered = render_composition(comp);
        auto parsed = parse_composition(rendered, vocabs);
        auto reparsed = parse_composition(render_composition(parsed), vocabs);
        if (!(parsed == comp) || !(reparsed == comp)) {
            c.require(false, "round trip diverged for '" + rendered + "'");
            return;
        }
        ++rounds;
    }
    c.require(rounds == 1000, "expected 1000 round trips");

    c.require(canonicalize_fiber("Spandex", vocabs) == "Elastane", "Spandex -> Elastane");
    c.require(normalize_family("satin-style", vocabs) == "satin", "satin-style -> satin");
    c.require(normalize_family("ribbed knit", vocabs) == "rib knit", "ribbed knit -> rib knit");

    double elapsed = seconds_since(start);
    c.require(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s >= 1 s");
}

// --- criterion 2: metric oracle equivalence ----------------------------------------

void criterion_metric_oracles(Criterion& c) {
    std::mt19937_64 rng(424242);
    const char* fibers[] = {"Cotton", "Polyester", "Wool", "Silk", "Nylon", "Elastane", "Linen"};

    auto random_comp = [&](std::size_t max_fibers) {
        FiberComposition comp;
        std::size_t k = 1 + rng_index(rng, max_fibers);
        std::vector<std::size_t> picked;
        while (picked.size() < k) {
            std::size_t f = rng_index(rng, 7);
            if (std::find(picked.begin(), picked.end(), f) == picked.end()) picked.push_back(f);
        }
        double remaining = 100.0;
        for (std::size_t j = 0; j < k; ++j) {
            double p = (j + 1 == k) ? remaining
                                    : std::floor(remaining * rng_unit(rng) * 0.8) + 1.0;
            remaining -= p;
            comp.entries.push_back({fibers[picked[j]], p});
        }
        return comp;
    };

    // 1000 random cases, grouped in batches to also vary the batch size
    for (int batch = 0; batch < 10; ++batch) {
        std::vector<FiberComposition> gt, pred;
        for (int i = 0; i < 100; ++i) {
            gt.push_back(random_comp(3));
            pred.push_back(random_comp(3));
        }
        auto ms = material_set_score(gt, pred);
        c.require(std::abs(ms.accuracy - oracle::material_accuracy(gt, pred)) <= 1e-12,
                  "material accuracy vs oracle");
        c.require(std::abs(ms.f1 - oracle::material_f1(gt, pred)) <= 1e-12, "material F1 vs oracle");
        auto pe = percentage_error(gt, pred);
        auto [mae_ref, nmae_ref] = oracle::percentage_mae_nmae(gt, pred);
        c.require(std::abs(pe.mae - mae_ref) <= 1e-12, "percentage MAE vs oracle");
        c.require(std::abs(pe.nmae - nmae_ref) <= 1e-12, "percentage NMAE vs oracle");
        if (!c.passed) return;
    }

    std::vector<std::string> classes = {"knit", "woven", "lining", "others"};
    for (int batch = 0; batch < 10; ++batch) {
        std::vector<std::string> gt, pred;
        for (int i = 0; i < 100; ++i) {
            gt.push_back(classes[rng_index(rng, 4)]);
            pred.push_back(classes[rng_index(rng, 4)]);
        }
        auto score = categorical_scores(gt, pred, classes);
        auto [acc_ref, f1_ref] = oracle::categorical_accuracy_macro_f1(gt, pred);
        c.require(std::abs(score.accuracy - acc_ref) <= 1e-12, "categorical accuracy vs oracle");
        c.require(std::abs(score.macro_f1 - f1_ref) <= 1e-12, "macro F1 vs oracle");

        std::vector<double> g(100), p(100);
        for (int i = 0; i < 100; ++i) {
            g[static_cast<std::size_t>(i)] = rng_unit(rng) * 500.0;
            p[static_cast<std::size_t>(i)] = rng_unit(rng) * 500.0;
        }
        auto err = continuous_error(g, p);
        auto [cmae_ref, cnmae_ref] = oracle::continuous_mae_nmae(g, p);
        c.require(std::abs(err.mae - cmae_ref) <= 1e-12, "continuous MAE vs oracle");
        c.require(err.nmae && std::abs(*err.nmae - cnmae_ref) <= 1e-12, "continuous NMAE vs oracle");
        if (!c.passed) return;
    }

    // worked examples reproduce exactly
    FiberComposition cotton, cotton_elastane, c80e20, c60e40;
    cotton.entries = {{"Cotton", 100}};
    cotton_elastane.entries = {{"Cotton", 80}, {"Elastane", 20}};
    c80e20.entries = {{"Cotton", 80}, {"Elastane", 20}};
    c60e40.entries = {{"Cotton", 60}, {"Elastane", 40}};

    auto worked = material_set_score({cotton}, {cotton_elastane});
    c.require(worked.accuracy == 0.5, "worked accuracy == 1/2");
    c.require(worked.f1 == 2.0 / 3.0, "worked F1 == 2/3");
    auto worked_pe = percentage_error({c80e20}, {c60e40});
    c.require(worked_pe.nmae == 0.375, "worked NMAE == 0.375");
    c.require(worked_pe.mae == 20.0, "worked MAE == 20");
}

// --- criterion 3: chamfer and voxel IoU -----------------------------------------------

void criterion_geometry_metrics(Criterion& c) {
    std::vector<Vec3> cloud = {{0, 0, 0}, {1, 2, 3}, {-4, 0.5, 2}};
    c.require(chamfer(cloud, cloud) == 0.0, "chamfer(a, a) == 0");

    TriMesh quad;
    quad.vertices = {{0, 0, 0}, {100, 0, 0}, {100, 100, 0}, {0, 100, 0}};
    quad.triangles = {{0, 1, 2}, {0, 2, 3}};
    c.require(voxel_iou(quad, quad, 50.0) == 1.0, "IoU(identical) == 1");

    for (double d : {1.0, 2.0, 10.0}) {
        std::vector<Vec3> a = {{0, 0, 0}};
        std::vector<Vec3> b = {{d, 0, 0}};
        c.require(chamfer(a, b) == d, "single-point chamfer at d=" + std::to_string(d));
    }

    std::mt19937_64 rng(90210);
    auto random_mesh = [&rng](int n_tris, double extent) {
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
    };
    for (int pair = 0; pair < 20; ++pair) {
        auto a = random_mesh(3, 120);
        auto b = random_mesh(3, 120);
        double got = voxel_iou(a, b, 50.0);
        double want = oracle::voxel_iou_dense(a, b, 50.0);
        if (std::abs(got - want) > 1e-9) {
            c.require(false, "IoU vs dense oracle diverged on pair " + std::to_string(pair));
            return;
        }
    }
}

// --- criterion 4: retrieval estimator ---------------------------------------------------

void criterion_retrieval(Criterion& c) {
    auto start = std::chrono::steady_clock::now();

    // exact-match queries return the record's scalars in every mode
    auto ds = testutil::synthetic_dataset(120, 51);
    std::mt19937_64 rng(8);
    for (int iter = 0; iter < 25; ++iter) {
        const auto& rec = ds.records[rng_index(rng, ds.size())];
        auto result = retrieve_candidates(rec.attributes, ds, 2.0);
        if (result.level != MatchLevel::ExactComposition || result.candidates.size() != 1)
            continue; // only the unique-candidate case pins the estimate
        for (auto mode : {AggregationMode::Mean, AggregationMode::Median, AggregationMode::Random}) {
            auto est = estimate_density_thickness(rec.attributes, ds, mode, 17);
            c.require(est.density_gsm == rec.physics.density_gsm &&
                          est.thickness_mm == rec.physics.thickness_mm,
                      "exact match estimate mismatch in mode " + to_string(mode));
        }
    }

    // convex boundedness over 500 random queries
    for (int iter = 0; iter < 500; ++iter) {
        const auto& probe = ds.records[rng_index(rng, ds.size())].attributes;
        auto result = retrieve_candidates(probe, ds, 2.0);
        double rho_lo = 1e300, rho_hi = -1e300, t_lo = 1e300, t_hi = -1e300;
        for (auto i : result.candidates) {
            rho_lo = std::min(rho_lo, ds.records[i].physics.density_gsm);
            rho_hi = std::max(rho_hi, ds.records[i].physics.density_gsm);
            t_lo = std::min(t_lo, ds.records[i].physics.thickness_mm);
            t_hi = std::max(t_hi, ds.records[i].physics.thickness_mm);
        }
        for (auto mode : {AggregationMode::Mean, AggregationMode::Median}) {
            auto est = estimate_density_thickness(probe, ds, mode, 1);
            c.require(est.density_gsm >= rho_lo - 1e-9 && est.density_gsm <= rho_hi + 1e-9 &&
                          est.thickness_mm >= t_lo - 1e-9 && est.thickness_mm <= t_hi + 1e-9,
                      "estimate escaped the candidate hull");
        }
        if (!c.passed) return;
    }

    // low-variance strata -> mean; outlier-injected variant -> median
    auto build = [&](bool inject_outliers) {
        FabricDataset synth;
        synth.vocab_fingerprint = testutil::vocabs().fingerprint;
        int id = 0;
        auto add_cluster = [&](const std::string& comp, const std::string& family,
                               StructureType structure, double rho, double t) {
            for (int i = 0; i < 10; ++i) {
                bool outlier = inject_outliers && i == 9;
                synth.records.push_back(testutil::make_record(
                    "r" + std::to_string(id++), comp, family, structure,
                    outlier ? rho * 6.0 : rho, outlier ? t * 6.0 : t));
            }
        };
        add_cluster("100% Cotton", "jersey", StructureType::Knit, 160, 0.5);
        add_cluster("100% Polyester", "twill", StructureType::Woven, 192, 0.625);
        add_cluster("100% Wool", "fleece", StructureType::Knit, 384, 1.0);
        add_cluster("95% Polyester, 5% Elastane", "poplin", StructureType::Woven, 128, 0.25);
        return synth;
    };
    c.require(select_mode_cv(build(false), 5, 3).selected == AggregationMode::Mean,
              "low-variance dataset must select mean");
    c.require(select_mode_cv(build(true), 5, 3).selected == AggregationMode::Median,
              "outlier-injected dataset must select median");

    double elapsed = seconds_since(start);
    c.require(elapsed < 30.0, "runtime " + std::to_string(elapsed) + " s >= 30 s");
}

// --- criterion 5: forest learning ------------------------------------------------------

void criterion_forest_learning(Criterion& c) {
    auto start = std::chrono::steady_clock::now();

    auto ds = testutil::synthetic_dataset(500, 7, 0.05);
    auto split = stratified_split(ds, {0.70, 0.15, 0.15}, StratKey::Structure, 3);
    FabricDataset train, test;
    train.vocab_fingerprint = test.vocab_fingerprint = ds.vocab_fingerprint;
    for (auto i : split.train) train.records.push_back(ds.records[i]);
    for (auto i : split.test) test.records.push_back(ds.records[i]);

    auto layout = FeatureLayout::from_vocabs(testutil::vocabs());
    auto Xt = features_matrix(train, testutil::vocabs(), layout);
    auto Xs = features_matrix(test, testutil::vocabs(), layout);

    auto scratch = testutil::scratch_dir("accept_models");
    for (TargetGroup group : kAllTargetGroups) {
        auto Yt = targets_matrix(train, group);
        auto Ys = targets_matrix(test, group);
        auto hp = default_hyperparams(group); // the cross-validated defaults
        auto forest = fit_forest(Xt, Yt, hp, 99);

        std::vector<double> mean_target(Yt.cols, 0.0);
        for (std::size_t r = 0; r < Yt.rows; ++r)
            for (std::size_t col = 0; col < Yt.cols; ++col) mean_target[col] += Yt.at(r, col);
        for (auto& v : mean_target) v /= static_cast<double>(Yt.rows);

        double forest_mae = 0.0, mean_mae = 0.0;
        std::vector<double> x(Xs.cols);
        for (std::size_t r = 0; r < Xs.rows; ++r) {
            for (std::size_t col = 0; col < Xs.cols; ++col) x[col] = Xs.at(r, col);
            auto pred = predict(forest, x);
            for (std::size_t col = 0; col < Ys.cols; ++col) {
                forest_mae += std::abs(pred[col] - Ys.at(r, col));
                mean_mae += std::abs(mean_target[col] - Ys.at(r, col));
            }
        }
        c.require(forest_mae < 0.7 * mean_mae,
                  to_string(group) + ": held-out MAE " + std::to_string(forest_mae) +
                      " not < 0.7 x mean-predictor MAE " + std::to_string(mean_mae));

        // byte-identical model documents for identical seeds
        forest.target_names = target_group_components(group);
        forest.feature_names = layout.names;
        forest.vocab_fingerprint = testutil::vocabs().fingerprint;
        auto again = fit_forest(Xt, Yt, hp, 99);
        again.target_names = forest.target_names;
        again.feature_names = layout.names;
        again.vocab_fingerprint = forest.vocab_fingerprint;
        std::string p1 = scratch + "/" + to_string(group) + "_a.json";
        std::string p2 = scratch + "/" + to_string(group) + "_b.json";
        save_forest(forest, p1);
        save_forest(again, p2);
        c.require(read_file(p1) == read_file(p2), to_string(group) + ": models not byte-identical");
    }

    double elapsed = seconds_since(start);
    c.require(elapsed < 300.0, "runtime " + std::to_string(elapsed) + " s >= 5 min");
}

// --- criterion 6: randomized search -----------------------------------------------------

void criterion_randomized_search(Criterion& c) {
    auto ds = testutil::synthetic_dataset(160, 29, 0.05);
    const auto& vocabs = testutil::vocabs();

    // the stock configuration plus nine degenerate fixtures that collapse
    // to (near) global-median predictors
    std::vector<ForestHyperparams> pool;
    pool.push_back(default_hyperparams(TargetGroup::Bend));
    pool.back().n_estimators = 30; // keep the suite fast; still a real learner
    for (int i = 0; i < 9; ++i) {
        ForestHyperparams degenerate;
        degenerate.n_estimators = 1 + (i % 3);
        degenerate.max_depth = 1;
        degenerate.min_samples_split = 2;
        degenerate.min_samples_leaf = 0.45 + 0.05 * static_cast<double>(i % 2); // root cannot split
        degenerate.max_features = 0.02;
        pool.push_back(degenerate);
    }

    auto [selected, report] =
        randomized_search(ds, vocabs, TargetGroup::Bend, pool, 50, 5, 11);
    c.require(report.entries.size() == 50, "expected 50 evaluated configurations");

    // best score achievable in the pool, on the same folds
    double best_in_pool = 1e300;
    for (std::size_t j = 0; j < pool.size(); ++j) {
        double score = cross_val_mae(ds, vocabs, TargetGroup::Bend, pool[j], 5,
                                     derive_seed(11, 0x0f01d5ULL), derive_seed(11, j + 1000));
        best_in_pool = std::min(best_in_pool, score);
    }
    double selected_score = report.entries[report.best_index].cv_mae;
    c.require(selected_score <= best_in_pool * 1.05,
              "selected CV MAE " + std::to_string(selected_score) + " not within 5% of best " +
                  std::to_string(best_in_pool));
    c.require(selected.max_depth == pool.front().max_depth &&
                  selected.max_features == pool.front().max_features,
              "search picked a degenerate fixture");
}

// --- criterion 7: end-to-end determinism --------------------------------------------------

void criterion_cli_determinism(Criterion& c) {
    auto dir = testutil::scratch_dir("cli_det");
    std::string dataset = g_data_dir + "/toy_fabrics.csv";

    c.require(run_cli("ingest --input " + dataset + " --out " + dir + "/ds.json") == 0, "ingest");
    c.require(run_cli("train --dataset " + dir + "/ds.json --search fixed --seed 7 --out " + dir +
                      "/models") == 0,
              "train");

    testutil::write_file(dir + "/garment.json",
                         R"({"id":"tee","composition":"95% Polyester, 5% Elastane",)"
                         R"("family":"jersey","structure":"knit"})");

    std::vector<std::string> outputs;
    for (int run = 0; run < 5; ++run) {
        std::string out = dir + "/physics_" + std::to_string(run) + ".json";
        c.require(run_cli("predict --models " + dir + "/models --dataset " + dir +
                          "/ds.json --attrs " + dir + "/garment.json --dt-mode mean --seed 3 --out " +
                          out) == 0,
                  "predict run " + std::to_string(run));
        outputs.push_back(read_file(out));
        c.require(!outputs.back().empty(), "empty physics.json");
    }
    for (int run = 1; run < 5; ++run)
        c.require(outputs[static_cast<std::size_t>(run)] == outputs[0],
                  "physics.json differs between runs 0 and " + std::to_string(run));

    // all 24 schema fields present
    auto doc = read_json_file(dir + "/physics_0.json");
    for (const auto& column : dataset_csv_columns())
        c.require(doc.contains(column), "physics.json missing field " + column);
}

// --- criterion 8: parameter sensitivity ---------------------------------------------------

void criterion_sensitivity(Criterion& c) {
    constexpr double kFrozenChamferThresholdMm = 5.0; // measured gap: 52.7 mm

    auto spec = testutil::horizontal_drape_spec(200, 200, 20);
    SimConfig config;

    auto start = std::chrono::steady_clock::now();
    auto heavy = simulate(spec, testutil::polyester_params(), config, 3.0);
    double one_sim = seconds_since(start);
    c.require(one_sim < 10.0, "3 s simulation took " + std::to_string(one_sim) + " s >= 10 s");

    auto light = simulate(spec, testutil::lace_params(), config, 3.0);
    double gap = chamfer(heavy.frames.back(), light.frames.back());
    c.require(gap > kFrozenChamferThresholdMm,
              "final-frame chamfer " + std::to_string(gap) + " mm below threshold");

    auto repeat = simulate(spec, testutil::polyester_params(), config, 3.0);
    c.require(chamfer(heavy.frames.back(), repeat.frames.back()) == 0.0,
              "identical parameters must give chamfer exactly 0");
}

// --- criterion 9: simulator physical sanity --------------------------------------------------

void criterion_simulator_sanity(Criterion& c) {
    // energy non-increase on the unforced damped drape
    auto spec = testutil::pinned_drape_spec(100, 100, 20);
    auto params = testutil::polyester_params();
    params.buckle_ratio = {0, 0, 0, 0}; // single-branch potential
    auto state = build_cloth(spec, params);
    SimConfig config;
    double prev = mechanical_energy(state, config);
    for (int f = 0; f < 60; ++f) {
        step(state, config, params);
        double now = mechanical_energy(state, config);
        c.require(now <= prev + 0.01 * std::abs(prev),
                  "energy increased more than 1% at frame " + std::to_string(f));
        if (!c.passed) return;
        prev = now;
    }

    // settling on a 5 s drape
    auto traj = simulate(testutil::pinned_drape_spec(100, 100, 20), testutil::polyester_params(),
                         SimConfig{}, 5.0);
    auto mean_speed = [&](std::size_t f) {
        double total = 0.0;
        double dt = traj.times[f] - traj.times[f - 1];
        for (std::size_t p = 0; p < traj.frames[f].size(); ++p)
            total += (traj.frames[f][p] - traj.frames[f - 1][p]).norm() / dt;
        return total / static_cast<double>(traj.frames[f].size());
    };
    double peak = 0.0, tail_max = 0.0;
    for (std::size_t f = 1; f < traj.frame_count(); ++f) peak = std::max(peak, mean_speed(f));
    for (std::size_t f = traj.frame_count() - traj.frame_count() / 10; f < traj.frame_count(); ++f)
        tail_max = std::max(tail_max, mean_speed(f));
    c.require(tail_max < 0.01 * peak, "drape did not settle: tail " + std::to_string(tail_max) +
                                          " vs peak " + std::to_string(peak));

    // single-particle gravity step vs closed form
    SimState particle;
    particle.nx = particle.ny = 1;
    particle.spacing_mm = 1;
    particle.positions = {{0, 0, 100}};
    particle.velocities = {{0, 0, 0}};
    particle.masses = {1.0};
    particle.pinned = {false};
    SimConfig pconfig;
    pconfig.frame_dt = 0.01;
    pconfig.substeps = 1;
    pconfig.gravity = 9800;
    pconfig.air_damping = 0.0;
    step(particle, pconfig, testutil::polyester_params());
    c.require(std::abs(particle.velocities[0].z - (-9800 * 0.01)) <= 1e-12,
              "velocity update off closed form");
    c.require(std::abs(particle.positions[0].z - (100 - 9800 * 0.01 * 0.01)) <= 1e-12,
              "position update off closed form");
}

// --- criterion 10: random baseline containment -------------------------------------------------

void criterion_baseline(Criterion& c) {
    auto ds = testutil::synthetic_dataset(60, 77);
    auto bounds = default_bounds(ds);
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        auto p = sample_random_physics(bounds, seed);
        if (!bounds.contains(p)) {
            c.require(false, "sample " + std::to_string(seed) + " escaped the bounds");
            return;
        }
    }

    auto rec = testutil::make_record("m", "100% Polyester", "twill", StructureType::Woven, 195, 0.65);
    ParamBounds degenerate;
    for (std::size_t i = 0; i < kPhysicsComponentCount; ++i) {
        double v = get_physics_component(rec.physics, i);
        degenerate.limits[i] = {v, v};
    }
    for (std::uint64_t seed : {0ULL, 1ULL, 999ULL}) {
        auto p = sample_random_physics(degenerate, seed);
        for (std::size_t i = 0; i < kPhysicsComponentCount; ++i)
            c.require(get_physics_component(p, i) == get_physics_component(rec.physics, i),
                      "degenerate bounds must reproduce the exact set");
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: acceptance <cli-binary> <data-dir>\n");
        return 2;
    }
    g_cli_path = argv[1];
    g_data_dir = argv[2];

    run_criterion(1, "parsing round-trip and pinned normalizations", criterion_parsing);
    run_criterion(2, "attribute metrics match brute-force oracles", criterion_metric_oracles);
    run_criterion(3, "chamfer basics and voxel IoU vs dense oracle", criterion_geometry_metrics);
    run_criterion(4, "hierarchical retrieval estimator", criterion_retrieval);
    run_criterion(5, "forest learning with the stock hyperparameters", criterion_forest_learning);
    run_criterion(6, "randomized search finds the non-degenerate optimum", criterion_randomized_search);
    run_criterion(7, "end-to-end CLI determinism", criterion_cli_determinism);
    run_criterion(8, "parameter sensitivity on the pinned drape", criterion_sensitivity);
    run_criterion(9, "simulator physical sanity", criterion_simulator_sanity);
    run_criterion(10, "random baseline containment", criterion_baseline);

    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}
