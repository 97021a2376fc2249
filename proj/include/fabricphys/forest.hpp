#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fabricphys/dataset.hpp"

namespace fabricphys {

struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> values; // row-major

    static Matrix zeros(std::size_t r, std::size_t c) { return {r, c, std::vector<double>(r * c, 0.0)}; }

    double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

struct ForestHyperparams {
    int n_estimators = 100;
    int max_depth = 20;
    /// Fractions of the training-set size when < 1, absolute counts otherwise
    /// (ceiling-rounded fractions).
    double min_samples_split = 0.0420;
    double min_samples_leaf = 0.0094;
    double max_features = 0.6911; // fraction of the feature count, (0, 1]
    bool bootstrap = true;
};

/// Cross-validated choices; the ratio group differs from the stiffness groups.
ForestHyperparams default_hyperparams(TargetGroup group);

struct TreeNode {
    int feature = -1; // -1 marks a leaf
    double threshold = 0.0;
    int left = -1, right = -1;
    std::vector<double> leaf; // per-component medians, leaves only

    bool is_leaf() const { return feature < 0; }
};

struct RegressionTree {
    std::vector<TreeNode> nodes; // nodes[0] is the root
    std::size_t n_outputs = 0;

    std::vector<double> predict(const std::vector<double>& x) const;
    int depth() const;
};

struct Forest {
    std::vector<RegressionTree> trees;
    ForestHyperparams hyperparams;
    std::uint64_t seed = 0;
    std::size_t n_features = 0;
    std::vector<std::string> target_names;
    std::vector<std::string> feature_names;
    std::string vocab_fingerprint;

    std::size_t n_outputs() const { return trees.empty() ? 0 : trees.front().n_outputs; }
};

/// Greedy top-down CART with the absolute-error criterion: each node picks,
/// over a random feature subset, the threshold minimizing the children's
/// summed absolute deviation about their per-component medians (components
/// range-normalized over the rows the tree is fitted on). Leaves predict
/// componentwise medians.
RegressionTree fit_tree(const Matrix& X, const Matrix& Y, const ForestHyperparams& hp,
                        std::mt19937_64& rng);

/// n_estimators trees on bootstrap resamples; deterministic given seed.
Forest fit_forest(const Matrix& X, const Matrix& Y, const ForestHyperparams& hp,
                  std::uint64_t seed);

std::vector<double> predict(const Forest& forest, const std::vector<double>& x);

// --- persistence ------------------------------------------------------------

void save_forest(const Forest& forest, const std::string& path);

/// Loads a model document; when expected_fingerprint is non-empty a mismatch
/// raises ModelVocabMismatch.
Forest load_forest(const std::string& path, const std::string& expected_fingerprint = "");

// --- training over datasets ---------------------------------------------------

Matrix features_matrix(const FabricDataset& ds, const Vocabularies& vocabs,
                       const FeatureLayout& layout);
Matrix targets_matrix(const FabricDataset& ds, TargetGroup group);

struct SearchSpace {
    std::vector<int> n_estimators{50, 100, 150, 200, 300};
    std::vector<int> max_depth{10, 15, 20, 25, 30, 40};
    std::array<double, 2> min_samples_split_range{0.005, 0.25}; // log-uniform
    std::array<double, 2> min_samples_leaf_range{0.001, 0.1};   // log-uniform
    std::array<double, 2> max_features_range{0.3, 1.0};          // uniform

    static SearchSpace load(const std::string& path);
};

ForestHyperparams sample_hyperparams(const SearchSpace& space, std::mt19937_64& rng);

/// Mean over k stratified folds of the per-component range-normalized
/// validation MAE. Folds are fixed by fold_seed so configurations compare on
/// identical partitions.
double cross_val_mae(const FabricDataset& ds, const Vocabularies& vocabs, TargetGroup group,
                     const ForestHyperparams& hp, int k, std::uint64_t fold_seed,
                     std::uint64_t fit_seed, std::vector<double>* fold_out = nullptr);

struct SearchReport {
    struct Entry {
        ForestHyperparams hp;
        double cv_mae = 0.0;
        std::vector<double> fold_mae;
    };
    std::vector<Entry> entries;
    std::size_t best_index = 0;
};

std::pair<ForestHyperparams, SearchReport> randomized_search(const FabricDataset& ds,
                                                             const Vocabularies& vocabs,
                                                             TargetGroup group,
                                                             const SearchSpace& space, int iters,
                                                             int k, std::uint64_t seed);

/// Same search over a discrete candidate pool (sampled with replacement).
std::pair<ForestHyperparams, SearchReport> randomized_search(
    const FabricDataset& ds, const Vocabularies& vocabs, TargetGroup group,
    const std::vector<ForestHyperparams>& pool, int iters, int k, std::uint64_t seed);

} // namespace fabricphys
