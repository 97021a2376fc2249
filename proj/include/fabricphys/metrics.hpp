#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fabricphys/geometry.hpp"
#include "fabricphys/tagparse.hpp"

namespace fabricphys {

// --- attribute metrics ------------------------------------------------------

struct MaterialSetScore {
    double accuracy = 0.0; // mean of tp / (tp + fp + fn)
    double f1 = 0.0;       // mean per-example F1, 0 where undefined
    struct Counts {
        std::size_t tp = 0, fp = 0, fn = 0;
    };
    std::vector<Counts> per_example;
};

/// Set comparison on canonical fiber names; percentages ignored. True
/// negatives are excluded by construction.
MaterialSetScore material_set_score(const std::vector<FiberComposition>& gt,
                                    const std::vector<FiberComposition>& pred);

struct PercentageErrorScore {
    double mae = 0.0;  // percentage points
    double nmae = 0.0; // in [0, 1]
};

/// Per example, errors run over the union of fibers in gt and pred (missing
/// fibers count as 0%); NMAE divides each term by max(gt, pred).
PercentageErrorScore percentage_error(const std::vector<FiberComposition>& gt,
                                      const std::vector<FiberComposition>& pred);

struct CategoricalScore {
    double accuracy = 0.0;
    double macro_f1 = 0.0; // averaged over classes present in gt or pred
};

CategoricalScore categorical_scores(const std::vector<std::string>& gt,
                                    const std::vector<std::string>& pred,
                                    const std::vector<std::string>& classes);

struct ContinuousError {
    double mae = 0.0;
    std::optional<double> nmae; // absent when the gt range is zero
};

/// NMAE = MAE / (max gt - min gt).
ContinuousError continuous_error(std::span<const double> gt, std::span<const double> pred);

// --- geometry metrics ---------------------------------------------------------

/// Symmetric Chamfer distance: the two directed mean nearest-neighbor
/// distances, averaged. Exact (brute-force) nearest neighbors, non-squared
/// Euclidean. Callers apply the x1e4 report scale.
double chamfer(std::span<const Vec3> a, std::span<const Vec3> b);

constexpr double kDefaultVoxelSizeMm = 50.0; // 5 cm

/// Surface-voxelization IoU: a voxel is occupied when any triangle overlaps
/// it (exact triangle-box test); the grid is anchored at the joint bounding
/// box's min corner.
double voxel_iou(const TriMesh& a, const TriMesh& b, double voxel_size = kDefaultVoxelSizeMm);

/// Exact triangle / axis-aligned-box overlap (separating axis test).
/// Box given by center and half-extents.
bool triangle_box_overlap(const Vec3& box_center, const Vec3& box_half, const Vec3& v0,
                          const Vec3& v1, const Vec3& v2);

// --- token-loss utilities -------------------------------------------------------

/// -sum_i w[target_i] * log(p_i); probabilities must lie in (0, 1].
double weighted_cross_entropy(std::span<const double> token_probs, std::span<const int> targets,
                              std::span<const double> class_weights);

/// weight_c = total / (n_classes * count_c); balanced counts give weight 1.
std::map<std::string, double> inverse_frequency_weights(
    const std::map<std::string, std::uint64_t>& class_counts);

} // namespace fabricphys
