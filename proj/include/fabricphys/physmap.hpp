#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "fabricphys/forest.hpp"
#include "fabricphys/retrieval.hpp"

namespace fabricphys {

/// The five per-group regressors plus the context they were trained with.
struct ModelSet {
    std::map<TargetGroup, Forest> forests;
    std::string vocab_fingerprint;

    static ModelSet load(const std::string& dir, const std::string& expected_fingerprint = "");
    void save(const std::string& dir) const;
};

struct PredictConfig {
    double friction = 0.3;
    double damping = 1.0;
    AggregationMode dt_mode = AggregationMode::Mean;
    double dt_tol = kDefaultPercentTolerance;
    std::uint64_t seed = 0;
    std::optional<ParamBounds> bounds; // defaults to dataset bounds
};

struct ClampEntry {
    std::string component;
    double raw_value;
    double clamped_value;
};

struct PhysicsProvenance {
    std::optional<DensityThicknessEstimate> density_thickness; // set when retrieval ran
    std::vector<ClampEntry> clamps;
    std::string model_fingerprint;
};

struct PhysicsPrediction {
    PhysicsParams params;
    PhysicsProvenance provenance;
};

/// Stiffness groups from the five forests, density/thickness passed through
/// (retrieved when absent), friction/damping from config, everything clamped
/// into bounds.
PhysicsPrediction predict_physics(const FabricAttributes& attrs, const ModelSet& models,
                                  const FabricDataset& ds, const Vocabularies& vocabs,
                                  const PredictConfig& config);

/// Independent per-component sampling: log-uniform for stiffness components,
/// uniform elsewhere. Deterministic given seed.
PhysicsParams sample_random_physics(const ParamBounds& bounds, std::uint64_t seed);

/// Componentwise [min, max] over the dataset, widened by a relative margin
/// (lower bounds never drop below 0).
ParamBounds default_bounds(const FabricDataset& ds, double margin = 0.1);

/// Static fallback table for dataset-free use.
ParamBounds load_bounds(const std::string& path);
void save_bounds(const ParamBounds& bounds, const std::string& path);

} // namespace fabricphys
