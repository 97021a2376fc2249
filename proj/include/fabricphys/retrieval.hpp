#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fabricphys/dataset.hpp"

namespace fabricphys {

/// Ordered by specificity: each level is tried only when every more
/// specific one is empty.
enum class MatchLevel {
    ExactComposition,
    MaterialSet,
    PrimaryFiber,
    StructureFallback,
    GlobalFallback,
};

std::string to_string(MatchLevel level);

enum class AggregationMode { Mean, Median, Random };

std::string to_string(AggregationMode mode);
AggregationMode parse_aggregation_mode(const std::string& name);

struct DensityThicknessEstimate {
    double density_gsm = 0.0;
    double thickness_mm = 0.0;
    MatchLevel level = MatchLevel::GlobalFallback;
    std::size_t candidate_count = 0;
};

constexpr double kDefaultPercentTolerance = 2.0; // percentage points per fiber

struct RetrievalResult {
    std::vector<std::size_t> candidates; // record indices
    MatchLevel level = MatchLevel::GlobalFallback;
};

/// Hierarchical candidate search among records sharing (family, structure):
/// exact composition (same fiber set, per-fiber |dp| <= tol) -> material set
/// -> primary fiber; then structure-only, then the whole dataset.
RetrievalResult retrieve_candidates(const FabricAttributes& attrs, const FabricDataset& ds,
                                    double tol = kDefaultPercentTolerance);

/// Mean: componentwise mean over candidates. Median: the single candidate at
/// the lower density median, keeping its paired thickness. Random: one
/// candidate chosen uniformly from the seed.
DensityThicknessEstimate estimate_density_thickness(const FabricAttributes& attrs,
                                                    const FabricDataset& ds,
                                                    AggregationMode mode, std::uint64_t seed,
                                                    double tol = kDefaultPercentTolerance);

struct ModeSelectionReport {
    struct Entry {
        AggregationMode mode;
        std::vector<double> fold_mae; // range-normalized, density/thickness averaged
        double mean_mae = 0.0;
    };
    std::vector<Entry> entries; // in mode order: mean, median, random
    AggregationMode selected = AggregationMode::Mean;
};

/// k-fold stratified CV over the dataset; per fold, each holdout record is
/// re-estimated from the fold's train records. Scores are the density and
/// thickness MAEs, each normalized by its fold-train range, averaged.
/// Ties break in the order mean < median < random.
ModeSelectionReport select_mode_cv(const FabricDataset& ds, int k, std::uint64_t seed,
                                   double tol = kDefaultPercentTolerance);

} // namespace fabricphys
