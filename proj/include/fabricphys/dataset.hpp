#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fabricphys/physics_params.hpp"
#include "fabricphys/tagparse.hpp"

namespace fabricphys {

struct FabricRecord {
    std::string id;
    FabricAttributes attributes; // density and thickness always present
    PhysicsParams physics;
};

struct FabricDataset {
    std::vector<FabricRecord> records;
    std::string vocab_fingerprint;

    std::size_t size() const { return records.size(); }
    bool empty() const { return records.empty(); }
};

enum class DatasetFormat { Auto, Csv, Json };

/// CSV schema, in order. "composition" carries the tag string form.
const std::vector<std::string>& dataset_csv_columns();

/// Load and validate a dataset. Rows failing validation raise
/// ValidationError with the 1-based row (or element) index; duplicate ids
/// raise SchemaError. Accepts the CSV schema, a JSON array of row objects,
/// or the wrapped document written by save_dataset_document.
FabricDataset load_dataset(const std::string& path, const Vocabularies& vocabs,
                           DatasetFormat format = DatasetFormat::Auto);

/// Canonical ingest output: versioned JSON document with the vocabulary
/// fingerprint; reload with load_dataset.
void save_dataset_document(const FabricDataset& ds, const std::string& path);
void save_dataset_csv(const FabricDataset& ds, const std::string& path);

// --- feature vectors ------------------------------------------------------

struct FeatureLayout {
    std::vector<std::string> names; // fiber:*, family:*, structure:*, log_density, log_thickness
    std::size_t fiber_offset = 0, fiber_count = 0;
    std::size_t family_offset = 0, family_count = 0;
    std::size_t structure_offset = 0, structure_count = 0;
    std::size_t density_index = 0, thickness_index = 0;

    std::size_t dimension() const { return names.size(); }

    static FeatureLayout from_vocabs(const Vocabularies& vocabs);
};

/// Fiber percentages /100, one-hot family and structure, log1p scalars.
/// Throws MissingScalar when density or thickness is absent.
std::vector<double> featurize(const FabricAttributes& attrs, const Vocabularies& vocabs,
                              const FeatureLayout& layout);

// --- splits ---------------------------------------------------------------

enum class StratKey { Structure, Family, None };

struct SplitResult {
    std::vector<std::size_t> train, val, test; // record indices
    std::vector<std::string> warnings;
};

/// 70/15/15-style stratified split with largest-remainder rounding per
/// stratum. Strata with fewer than 3 records go entirely to train (warning).
/// Member sets depend only on record ids and the seed, not input order.
SplitResult stratified_split(const FabricDataset& ds, const std::array<double, 3>& ratios,
                             StratKey key, std::uint64_t seed);

struct FoldPair {
    std::vector<std::size_t> train, holdout;
};

/// k disjoint holdouts covering the dataset; per-stratum fold counts differ
/// by at most one.
std::vector<FoldPair> stratified_kfold(const FabricDataset& ds, int k, StratKey key,
                                       std::uint64_t seed);

/// Stratum label of a record under a key.
std::string stratum_of(const FabricRecord& record, StratKey key);

} // namespace fabricphys
