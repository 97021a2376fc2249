#include "fabricphys/physmap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "fabricphys/errors.hpp"
#include "fabricphys/rng.hpp"

namespace fabricphys {

using ordered_json = nlohmann::ordered_json;

ModelSet ModelSet::load(const std::string& dir, const std::string& expected_fingerprint) {
    ModelSet models;
    for (TargetGroup g : kAllTargetGroups) {
        std::string path = dir + "/" + to_string(g) + ".json";
        models.forests[g] = load_forest(path, expected_fingerprint);
    }
    models.vocab_fingerprint = models.forests.begin()->second.vocab_fingerprint;
    for (const auto& [g, forest] : models.forests)
        if (forest.vocab_fingerprint != models.vocab_fingerprint)
            raise(ErrorCode::ModelVocabMismatch, "model files carry mixed vocabulary fingerprints");
    return models;
}

void ModelSet::save(const std::string& dir) const {
    for (const auto& [g, forest] : forests)
        save_forest(forest, dir + "/" + to_string(g) + ".json");
}

PhysicsPrediction predict_physics(const FabricAttributes& attrs, const ModelSet& models,
                                  const FabricDataset& ds, const Vocabularies& vocabs,
                                  const PredictConfig& config) {
    for (const auto& [g, forest] : models.forests)
        if (forest.vocab_fingerprint != vocabs.fingerprint)
            raise(ErrorCode::ModelVocabMismatch,
                  "model " + to_string(g) + " was trained with different vocabularies");

    PhysicsPrediction out;
    FabricAttributes resolved = attrs;
    if (!resolved.density_gsm || !resolved.thickness_mm) {
        auto est = estimate_density_thickness(resolved, ds, config.dt_mode, config.seed, config.dt_tol);
        if (!resolved.density_gsm) resolved.density_gsm = est.density_gsm;
        if (!resolved.thickness_mm) resolved.thickness_mm = est.thickness_mm;
        out.provenance.density_thickness = est;
    }

    auto layout = FeatureLayout::from_vocabs(vocabs);
    auto x = featurize(resolved, vocabs, layout);

    PhysicsParams params;
    params.density_gsm = *resolved.density_gsm;
    params.thickness_mm = *resolved.thickness_mm;
    params.friction = config.friction;
    params.damping = config.damping;
    for (const auto& [group, forest] : models.forests)
        set_target_group(params, group, predict(forest, x));

    ParamBounds bounds = config.bounds ? *config.bounds : default_bounds(ds);
    const auto& names = physics_component_names();
    for (std::size_t i = 0; i < kPhysicsComponentCount; ++i) {
        double v = get_physics_component(params, i);
        double clamped = std::clamp(v, bounds.limits[i].first, bounds.limits[i].second);
        if (clamped != v) {
            out.provenance.clamps.push_back({names[i], v, clamped});
            set_physics_component(params, i, clamped);
        }
    }

    out.params = params;
    out.provenance.model_fingerprint = models.vocab_fingerprint;
    if (auto bad = physics_invariant_violation(out.params); !bad.empty())
        raise(ErrorCode::InvalidParams, "prediction escaped its invariants: " + bad);
    return out;
}

PhysicsParams sample_random_physics(const ParamBounds& bounds, std::uint64_t seed) {
    for (std::size_t i = 0; i < kPhysicsComponentCount; ++i) {
        auto [lo, hi] = bounds.limits[i];
        if (!(std::isfinite(lo) && std::isfinite(hi)) || lo > hi || lo < 0.0)
            raise(ErrorCode::InvalidBounds,
                  "bad bounds for " + physics_component_names()[i]);
    }
    std::mt19937_64 rng(seed);
    PhysicsParams params;
    for (std::size_t i = 0; i < kPhysicsComponentCount; ++i) {
        auto [lo, hi] = bounds.limits[i];
        double v;
        if (lo == hi) {
            v = lo;
        } else if (physics_component_is_stiffness(i)) {
            // log-uniform; a zero lower bound is lifted just inside the range
            double floor_value = lo > 0.0 ? lo : hi * 1e-6;
            v = std::exp(rng_uniform(rng, std::log(floor_value), std::log(hi)));
            v = std::clamp(v, lo, hi);
        } else {
            v = rng_uniform(rng, lo, hi);
        }
        set_physics_component(params, i, v);
    }
    return params;
}

ParamBounds default_bounds(const FabricDataset& ds, double margin) {
    if (ds.empty())
        raise(ErrorCode::EmptyDataset, "cannot derive bounds from an empty dataset");
    if (margin < 0.0)
        raise(ErrorCode::InvalidBounds, "bounds margin must be >= 0");
    ParamBounds bounds;
    for (std::size_t i = 0; i < kPhysicsComponentCount; ++i) {
        double lo = get_physics_component(ds.records.front().physics, i);
        double hi = lo;
        for (const auto& rec : ds.records) {
            double v = get_physics_component(rec.physics, i);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        bounds.limits[i] = {std::max(0.0, lo - margin * std::abs(lo)), hi + margin * std::abs(hi)};
    }
    return bounds;
}

ParamBounds load_bounds(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        raise(ErrorCode::IoError, "cannot open bounds file " + path);
    try {
        auto doc = ordered_json::parse(in);
        ParamBounds bounds;
        const auto& names = physics_component_names();
        for (std::size_t i = 0; i < kPhysicsComponentCount; ++i) {
            auto pair = doc.at(names[i]).get<std::vector<double>>();
            if (pair.size() != 2)
                raise(ErrorCode::SchemaError, names[i] + " bounds must be a [lo, hi] pair");
            if (!(pair[0] <= pair[1]) || pair[0] < 0.0)
                raise(ErrorCode::InvalidBounds, names[i] + " bounds must satisfy 0 <= lo <= hi");
            bounds.limits[i] = {pair[0], pair[1]};
        }
        return bounds;
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::SchemaError, std::string("bad bounds file: ") + e.what());
    }
}

void save_bounds(const ParamBounds& bounds, const std::string& path) {
    ordered_json doc;
    const auto& names = physics_component_names();
    for (std::size_t i = 0; i < kPhysicsComponentCount; ++i)
        doc[names[i]] = {bounds.limits[i].first, bounds.limits[i].second};
    std::ofstream out(path);
    if (!out)
        raise(ErrorCode::IoError, "cannot write bounds file " + path);
    out << doc.dump(2) << "\n";
}

} // namespace fabricphys
