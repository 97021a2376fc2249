#include "fabricphys/forest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>

#include <json.hpp>

#include "fabricphys/errors.hpp"
#include "fabricphys/rng.hpp"

namespace fabricphys {

using ordered_json = nlohmann::ordered_json;

ForestHyperparams default_hyperparams(TargetGroup group) {
    ForestHyperparams hp;
    if (group == TargetGroup::BuckleRatio) {
        hp.n_estimators = 200;
        hp.max_depth = 30;
        hp.min_samples_split = 0.0703;
        hp.min_samples_leaf = 0.0016;
        hp.max_features = 0.9595;
    } else {
        hp.n_estimators = 100;
        hp.max_depth = 20;
        hp.min_samples_split = 0.0420;
        hp.min_samples_leaf = 0.0094;
        hp.max_features = 0.6911;
    }
    return hp;
}

namespace {

void validate_hyperparams(const ForestHyperparams& hp) {
    if (hp.n_estimators < 1 || hp.max_depth < 1)
        raise(ErrorCode::UsageError, "n_estimators and max_depth must be >= 1");
    if (!(hp.min_samples_split > 0.0) || !(hp.min_samples_leaf > 0.0))
        raise(ErrorCode::UsageError, "min_samples_* must be positive");
    if (!(hp.max_features > 0.0) || hp.max_features > 1.0)
        raise(ErrorCode::UsageError, "max_features must be in (0, 1]");
    if (hp.min_samples_split < 1.0 && hp.min_samples_leaf < 1.0 &&
        hp.min_samples_leaf > hp.min_samples_split)
        raise(ErrorCode::UsageError, "min_samples_leaf must not exceed min_samples_split");
}

std::size_t resolve_count(double value, std::size_t n, std::size_t floor_value) {
    std::size_t count;
    if (value < 1.0)
        count = static_cast<std::size_t>(std::ceil(value * static_cast<double>(n)));
    else
        count = static_cast<std::size_t>(value);
    return std::max(count, floor_value);
}

/// Insert-only running median with the summed absolute deviation about it.
class MedianTracker {
public:
    void clear() {
        low_.clear();
        high_.clear();
        low_sum_ = high_sum_ = 0.0;
    }
    void push(double v) {
        if (low_.empty() || v <= low_.front()) {
            low_.push_back(v);
            std::push_heap(low_.begin(), low_.end());
            low_sum_ += v;
        } else {
            high_.push_back(v);
            std::push_heap(high_.begin(), high_.end(), std::greater<>());
            high_sum_ += v;
        }
        if (low_.size() > high_.size() + 1) {
            std::pop_heap(low_.begin(), low_.end());
            double v2 = low_.back();
            low_.pop_back();
            low_sum_ -= v2;
            high_.push_back(v2);
            std::push_heap(high_.begin(), high_.end(), std::greater<>());
            high_sum_ += v2;
        } else if (high_.size() > low_.size()) {
            std::pop_heap(high_.begin(), high_.end(), std::greater<>());
            double v2 = high_.back();
            high_.pop_back();
            high_sum_ -= v2;
            low_.push_back(v2);
            std::push_heap(low_.begin(), low_.end());
            low_sum_ += v2;
        }
    }
    double median() const {
        if (low_.size() > high_.size()) return low_.front();
        return 0.5 * (low_.front() + high_.front());
    }
    /// Exact sum of |v - median| over everything pushed so far.
    double abs_dev() const {
        if (low_.empty()) return 0.0;
        double m = median();
        return (m * static_cast<double>(low_.size()) - low_sum_) +
               (high_sum_ - m * static_cast<double>(high_.size()));
    }

private:
    std::vector<double> low_;  // max-heap
    std::vector<double> high_; // min-heap
    double low_sum_ = 0.0, high_sum_ = 0.0;
};

double component_median(std::vector<double>& scratch) {
    std::sort(scratch.begin(), scratch.end());
    std::size_t n = scratch.size();
    if (n % 2 == 1) return scratch[n / 2];
    return 0.5 * (scratch[n / 2 - 1] + scratch[n / 2]);
}

struct TreeBuilder {
    const Matrix& X;
    const Matrix& Y;
    std::vector<double> scale; // per output component, 1/range over the fitted rows
    int max_depth;
    std::size_t min_split, min_leaf, features_per_node;
    std::mt19937_64& rng;
    std::vector<TreeNode> nodes;

    // scratch reused across nodes
    std::vector<std::size_t> feature_pool;
    std::vector<std::size_t> order;
    std::vector<double> prefix_cost, suffix_cost;
    MedianTracker tracker;

    TreeBuilder(const Matrix& x, const Matrix& y, const ForestHyperparams& hp, std::mt19937_64& r)
        : X(x), Y(y), max_depth(hp.max_depth), rng(r) {
        min_split = resolve_count(hp.min_samples_split, X.rows, 2);
        min_leaf = resolve_count(hp.min_samples_leaf, X.rows, 1);
        features_per_node = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::ceil(hp.max_features * static_cast<double>(X.cols))));
        features_per_node = std::min(features_per_node, X.cols);

        scale.assign(Y.cols, 1.0);
        for (std::size_t c = 0; c < Y.cols; ++c) {
            double lo = Y.at(0, c), hi = lo;
            for (std::size_t r2 = 1; r2 < Y.rows; ++r2) {
                lo = std::min(lo, Y.at(r2, c));
                hi = std::max(hi, Y.at(r2, c));
            }
            if (hi - lo > 0.0) scale[c] = 1.0 / (hi - lo);
        }
        feature_pool.resize(X.cols);
        std::iota(feature_pool.begin(), feature_pool.end(), 0);
    }

    std::vector<double> leaf_values(const std::vector<std::size_t>& rows) {
        std::vector<double> values(Y.cols);
        std::vector<double> scratch(rows.size());
        for (std::size_t c = 0; c < Y.cols; ++c) {
            for (std::size_t i = 0; i < rows.size(); ++i) scratch[i] = Y.at(rows[i], c);
            values[c] = component_median(scratch);
        }
        return values;
    }

    double node_cost(const std::vector<std::size_t>& rows) {
        double cost = 0.0;
        for (std::size_t c = 0; c < Y.cols; ++c) {
            tracker.clear();
            for (std::size_t r : rows) tracker.push(Y.at(r, c));
            cost += scale[c] * tracker.abs_dev();
        }
        return cost;
    }

    int make_leaf(const std::vector<std::size_t>& rows) {
        TreeNode node;
        node.leaf = leaf_values(rows);
        nodes.push_back(std::move(node));
        return static_cast<int>(nodes.size() - 1);
    }

    int build(std::vector<std::size_t>& rows, int depth) {
        const std::size_t n = rows.size();
        double cost = node_cost(rows);
        if (cost <= 1e-12 || depth >= max_depth || n < min_split || n < 2 * min_leaf)
            return make_leaf(rows);

        // random feature subset, evaluated in ascending index order
        for (std::size_t i = 0; i < features_per_node; ++i) {
            std::size_t j = i + rng_index(rng, X.cols - i);
            std::swap(feature_pool[i], feature_pool[j]);
        }
        std::vector<std::size_t> chosen(feature_pool.begin(),
                                        feature_pool.begin() + static_cast<long>(features_per_node));
        std::sort(chosen.begin(), chosen.end());

        double best_score = cost - 1e-12;
        int best_feature = -1;
        double best_threshold = 0.0;

        order.resize(n);
        prefix_cost.resize(n);
        suffix_cost.resize(n);

        for (std::size_t f : chosen) {
            std::copy(rows.begin(), rows.end(), order.begin());
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                double va = X.at(a, f), vb = X.at(b, f);
                if (va != vb) return va < vb;
                return a < b;
            });
            if (X.at(order.front(), f) == X.at(order.back(), f)) continue;

            std::fill(prefix_cost.begin(), prefix_cost.end(), 0.0);
            std::fill(suffix_cost.begin(), suffix_cost.end(), 0.0);
            for (std::size_t c = 0; c < Y.cols; ++c) {
                tracker.clear();
                for (std::size_t i = 0; i < n; ++i) {
                    tracker.push(Y.at(order[i], c));
                    prefix_cost[i] += scale[c] * tracker.abs_dev();
                }
                tracker.clear();
                for (std::size_t i = n; i-- > 0;) {
                    tracker.push(Y.at(order[i], c));
                    suffix_cost[i] += scale[c] * tracker.abs_dev();
                }
            }

            for (std::size_t i = min_leaf; i + min_leaf <= n; ++i) {
                double left_value = X.at(order[i - 1], f);
                double right_value = X.at(order[i], f);
                if (left_value == right_value) continue;
                double score = prefix_cost[i - 1] + suffix_cost[i];
                if (score < best_score) {
                    best_score = score;
                    best_feature = static_cast<int>(f);
                    best_threshold = left_value + 0.5 * (right_value - left_value);
                }
            }
        }

        if (best_feature < 0) return make_leaf(rows);

        std::vector<std::size_t> left_rows, right_rows;
        left_rows.reserve(n);
        right_rows.reserve(n);
        for (std::size_t r : rows)
            (X.at(r, static_cast<std::size_t>(best_feature)) <= best_threshold ? left_rows : right_rows)
                .push_back(r);

        int index = static_cast<int>(nodes.size());
        nodes.emplace_back();
        nodes[static_cast<std::size_t>(index)].feature = best_feature;
        nodes[static_cast<std::size_t>(index)].threshold = best_threshold;
        int left = build(left_rows, depth + 1);
        int right = build(right_rows, depth + 1);
        nodes[static_cast<std::size_t>(index)].left = left;
        nodes[static_cast<std::size_t>(index)].right = right;
        return index;
    }
};

void check_training_input(const Matrix& X, const Matrix& Y) {
    if (X.rows == 0 || Y.rows == 0)
        raise(ErrorCode::EmptyTraining, "no training rows");
    if (X.rows != Y.rows)
        raise(ErrorCode::DimensionMismatch, "X and Y row counts differ");
    for (double v : X.values)
        if (!std::isfinite(v)) raise(ErrorCode::NonFiniteInput, "non-finite feature value");
    for (double v : Y.values)
        if (!std::isfinite(v)) raise(ErrorCode::NonFiniteInput, "non-finite target value");
}

} // namespace

RegressionTree fit_tree(const Matrix& X, const Matrix& Y, const ForestHyperparams& hp,
                        std::mt19937_64& rng) {
    validate_hyperparams(hp);
    check_training_input(X, Y);
    TreeBuilder builder(X, Y, hp, rng);
    std::vector<std::size_t> rows(X.rows);
    std::iota(rows.begin(), rows.end(), 0);
    // build() appends the root first for non-leaf trees; for the leaf-only
    // case the single node is the root either way
    builder.build(rows, 0);
    RegressionTree tree;
    tree.nodes = std::move(builder.nodes);
    tree.n_outputs = Y.cols;
    return tree;
}

std::vector<double> RegressionTree::predict(const std::vector<double>& x) const {
    const TreeNode* node = &nodes.front();
    while (!node->is_leaf()) {
        std::size_t f = static_cast<std::size_t>(node->feature);
        if (f >= x.size())
            raise(ErrorCode::DimensionMismatch, "feature vector shorter than the trained model expects");
        node = &nodes[static_cast<std::size_t>(x[f] <= node->threshold ? node->left : node->right)];
    }
    return node->leaf;
}

int RegressionTree::depth() const {
    std::function<int(int)> walk = [&](int index) -> int {
        const TreeNode& node = nodes[static_cast<std::size_t>(index)];
        if (node.is_leaf()) return 0;
        return 1 + std::max(walk(node.left), walk(node.right));
    };
    return nodes.empty() ? 0 : walk(0);
}

Forest fit_forest(const Matrix& X, const Matrix& Y, const ForestHyperparams& hp,
                  std::uint64_t seed) {
    check_training_input(X, Y);
    Forest forest;
    forest.hyperparams = hp;
    forest.seed = seed;
    forest.n_features = X.cols;
    forest.trees.reserve(static_cast<std::size_t>(hp.n_estimators));
    for (int t = 0; t < hp.n_estimators; ++t) {
        std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        if (hp.bootstrap) {
            Matrix Xb = Matrix::zeros(X.rows, X.cols);
            Matrix Yb = Matrix::zeros(Y.rows, Y.cols);
            for (std::size_t r = 0; r < X.rows; ++r) {
                std::size_t pick = rng_index(rng, X.rows);
                for (std::size_t c = 0; c < X.cols; ++c) Xb.at(r, c) = X.at(pick, c);
                for (std::size_t c = 0; c < Y.cols; ++c) Yb.at(r, c) = Y.at(pick, c);
            }
            forest.trees.push_back(fit_tree(Xb, Yb, hp, rng));
        } else {
            forest.trees.push_back(fit_tree(X, Y, hp, rng));
        }
    }
    return forest;
}

std::vector<double> predict(const Forest& forest, const std::vector<double>& x) {
    if (forest.trees.empty())
        raise(ErrorCode::EmptyTraining, "forest has no trees");
    if (forest.n_features > 0 && x.size() != forest.n_features)
        raise(ErrorCode::DimensionMismatch, "feature vector has wrong dimension");
    std::vector<double> out(forest.n_outputs(), 0.0);
    for (const auto& tree : forest.trees) {
        auto leaf = tree.predict(x);
        for (std::size_t c = 0; c < out.size(); ++c) out[c] += leaf[c];
    }
    double inv = 1.0 / static_cast<double>(forest.trees.size());
    for (double& v : out) v *= inv;
    return out;
}

// --- persistence ------------------------------------------------------------

void save_forest(const Forest& forest, const std::string& path) {
    ordered_json doc;
    doc["format"] = "fabricphys-forest";
    doc["version"] = 1;
    doc["vocab_fingerprint"] = forest.vocab_fingerprint;
    doc["seed"] = forest.seed;
    doc["n_features"] = forest.n_features;
    doc["target_names"] = forest.target_names;
    doc["feature_names"] = forest.feature_names;
    doc["hyperparams"] = {
        {"n_estimators", forest.hyperparams.n_estimators},
        {"max_depth", forest.hyperparams.max_depth},
        {"min_samples_split", forest.hyperparams.min_samples_split},
        {"min_samples_leaf", forest.hyperparams.min_samples_leaf},
        {"max_features", forest.hyperparams.max_features},
        {"bootstrap", forest.hyperparams.bootstrap},
    };
    ordered_json trees = ordered_json::array();
    for (const auto& tree : forest.trees) {
        ordered_json nodes = ordered_json::array();
        for (const auto& node : tree.nodes) {
            if (node.is_leaf())
                nodes.push_back({{"v", node.leaf}});
            else
                nodes.push_back({{"f", node.feature},
                                 {"t", node.threshold},
                                 {"l", node.left},
                                 {"r", node.right}});
        }
        trees.push_back({{"nodes", std::move(nodes)}});
    }
    doc["trees"] = std::move(trees);

    std::ofstream out(path);
    if (!out)
        raise(ErrorCode::IoError, "cannot write model file " + path);
    out << doc.dump() << "\n";
}

Forest load_forest(const std::string& path, const std::string& expected_fingerprint) {
    std::ifstream in(path);
    if (!in)
        raise(ErrorCode::IoError, "cannot open model file " + path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::SchemaError, std::string("bad model JSON: ") + e.what());
    }
    try {
        if (doc.at("format") != "fabricphys-forest")
            raise(ErrorCode::SchemaError, "not a forest model document");
        Forest forest;
        forest.vocab_fingerprint = doc.at("vocab_fingerprint").get<std::string>();
        if (!expected_fingerprint.empty() && forest.vocab_fingerprint != expected_fingerprint)
            raise(ErrorCode::ModelVocabMismatch,
                  "model was trained with different vocabularies (fingerprint mismatch)");
        forest.seed = doc.at("seed").get<std::uint64_t>();
        forest.n_features = doc.at("n_features").get<std::size_t>();
        forest.target_names = doc.at("target_names").get<std::vector<std::string>>();
        forest.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
        const auto& hp = doc.at("hyperparams");
        forest.hyperparams.n_estimators = hp.at("n_estimators").get<int>();
        forest.hyperparams.max_depth = hp.at("max_depth").get<int>();
        forest.hyperparams.min_samples_split = hp.at("min_samples_split").get<double>();
        forest.hyperparams.min_samples_leaf = hp.at("min_samples_leaf").get<double>();
        forest.hyperparams.max_features = hp.at("max_features").get<double>();
        forest.hyperparams.bootstrap = hp.at("bootstrap").get<bool>();
        for (const auto& tree_doc : doc.at("trees")) {
            RegressionTree tree;
            for (const auto& node_doc : tree_doc.at("nodes")) {
                TreeNode node;
                if (node_doc.contains("v")) {
                    node.leaf = node_doc.at("v").get<std::vector<double>>();
                } else {
                    node.feature = node_doc.at("f").get<int>();
                    node.threshold = node_doc.at("t").get<double>();
                    node.left = node_doc.at("l").get<int>();
                    node.right = node_doc.at("r").get<int>();
                }
                tree.nodes.push_back(std::move(node));
            }
            for (const auto& node : tree.nodes)
                if (node.is_leaf()) {
                    tree.n_outputs = node.leaf.size();
                    break;
                }
            forest.trees.push_back(std::move(tree));
        }
        return forest;
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::SchemaError, std::string("malformed model document: ") + e.what());
    }
}

// --- training over datasets ---------------------------------------------------

Matrix features_matrix(const FabricDataset& ds, const Vocabularies& vocabs,
                       const FeatureLayout& layout) {
    Matrix X = Matrix::zeros(ds.size(), layout.dimension());
    for (std::size_t r = 0; r < ds.size(); ++r) {
        auto x = featurize(ds.records[r].attributes, vocabs, layout);
        std::copy(x.begin(), x.end(), X.values.begin() + static_cast<long>(r * X.cols));
    }
    return X;
}

Matrix targets_matrix(const FabricDataset& ds, TargetGroup group) {
    std::size_t width = target_group_components(group).size();
    Matrix Y = Matrix::zeros(ds.size(), width);
    for (std::size_t r = 0; r < ds.size(); ++r) {
        auto y = get_target_group(ds.records[r].physics, group);
        std::copy(y.begin(), y.end(), Y.values.begin() + static_cast<long>(r * Y.cols));
    }
    return Y;
}

SearchSpace SearchSpace::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        raise(ErrorCode::IoError, "cannot open search space file " + path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
        SearchSpace space;
        space.n_estimators = doc.at("n_estimators").get<std::vector<int>>();
        space.max_depth = doc.at("max_depth").get<std::vector<int>>();
        auto range = [&](const char* key) {
            auto v = doc.at(key).get<std::vector<double>>();
            if (v.size() != 2)
                raise(ErrorCode::SchemaError, std::string(key) + " must be a [lo, hi] pair");
            return std::array<double, 2>{v[0], v[1]};
        };
        space.min_samples_split_range = range("min_samples_split");
        space.min_samples_leaf_range = range("min_samples_leaf");
        space.max_features_range = range("max_features");
        return space;
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::SchemaError, std::string("bad search space: ") + e.what());
    }
}

ForestHyperparams sample_hyperparams(const SearchSpace& space, std::mt19937_64& rng) {
    if (space.n_estimators.empty() || space.max_depth.empty())
        raise(ErrorCode::EmptySpace, "search space has no candidate configurations");
    ForestHyperparams hp;
    hp.n_estimators = space.n_estimators[rng_index(rng, space.n_estimators.size())];
    hp.max_depth = space.max_depth[rng_index(rng, space.max_depth.size())];
    auto log_uniform = [&rng](const std::array<double, 2>& range) {
        return std::exp(rng_uniform(rng, std::log(range[0]), std::log(range[1])));
    };
    hp.min_samples_split = log_uniform(space.min_samples_split_range);
    hp.min_samples_leaf = log_uniform(space.min_samples_leaf_range);
    if (hp.min_samples_leaf > hp.min_samples_split) hp.min_samples_leaf = hp.min_samples_split;
    hp.max_features = rng_uniform(rng, space.max_features_range[0], space.max_features_range[1]);
    return hp;
}

double cross_val_mae(const FabricDataset& ds, const Vocabularies& vocabs, TargetGroup group,
                     const ForestHyperparams& hp, int k, std::uint64_t fold_seed,
                     std::uint64_t fit_seed, std::vector<double>* fold_out) {
    if (ds.empty())
        raise(ErrorCode::EmptyDataset, "cannot cross-validate an empty dataset");
    auto layout = FeatureLayout::from_vocabs(vocabs);
    auto X = features_matrix(ds, vocabs, layout);
    auto Y = targets_matrix(ds, group);
    auto folds = stratified_kfold(ds, k, StratKey::Structure, fold_seed);

    double total = 0.0;
    std::size_t used_folds = 0;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        const auto& fold = folds[f];
        if (fold.train.empty() || fold.holdout.empty()) continue;

        Matrix Xt = Matrix::zeros(fold.train.size(), X.cols);
        Matrix Yt = Matrix::zeros(fold.train.size(), Y.cols);
        for (std::size_t i = 0; i < fold.train.size(); ++i)
            for (std::size_t c = 0; c < X.cols; ++c) {
                Xt.at(i, c) = X.at(fold.train[i], c);
                if (c < Y.cols) Yt.at(i, c) = Y.at(fold.train[i], c);
            }
        Forest forest = fit_forest(Xt, Yt, hp, derive_seed(fit_seed, f));

        std::vector<double> scale(Y.cols, 1.0);
        for (std::size_t c = 0; c < Y.cols; ++c) {
            double lo = Yt.at(0, c), hi = lo;
            for (std::size_t r = 1; r < Yt.rows; ++r) {
                lo = std::min(lo, Yt.at(r, c));
                hi = std::max(hi, Yt.at(r, c));
            }
            if (hi - lo > 0.0) scale[c] = 1.0 / (hi - lo);
        }

        std::vector<double> err(Y.cols, 0.0);
        std::vector<double> x(X.cols);
        for (std::size_t i : fold.holdout) {
            for (std::size_t c = 0; c < X.cols; ++c) x[c] = X.at(i, c);
            auto pred = predict(forest, x);
            for (std::size_t c = 0; c < Y.cols; ++c) err[c] += std::abs(pred[c] - Y.at(i, c));
        }
        double fold_mae = 0.0;
        for (std::size_t c = 0; c < Y.cols; ++c)
            fold_mae += scale[c] * err[c] / static_cast<double>(fold.holdout.size());
        fold_mae /= static_cast<double>(Y.cols);
        if (fold_out) fold_out->push_back(fold_mae);
        total += fold_mae;
        ++used_folds;
    }
    if (used_folds == 0)
        raise(ErrorCode::EmptyDataset, "no usable folds");
    return total / static_cast<double>(used_folds);
}

namespace {

template <typename SampleFn>
std::pair<ForestHyperparams, SearchReport> run_search(const FabricDataset& ds,
                                                      const Vocabularies& vocabs, TargetGroup group,
                                                      int iters, int k, std::uint64_t seed,
                                                      SampleFn&& sample) {
    if (iters < 1)
        raise(ErrorCode::EmptySpace, "randomized search needs at least one iteration");
    std::uint64_t fold_seed = derive_seed(seed, 0x0f01d5ULL);

    SearchReport report;
    std::mt19937_64 sampler(derive_seed(seed, 0x5a3c7eULL));
    for (int j = 0; j < iters; ++j) {
        SearchReport::Entry entry;
        entry.hp = sample(sampler);
        entry.cv_mae = cross_val_mae(ds, vocabs, group, entry.hp, k, fold_seed,
                                     derive_seed(seed, static_cast<std::uint64_t>(j)),
                                     &entry.fold_mae);
        report.entries.push_back(std::move(entry));
    }
    report.best_index = 0;
    for (std::size_t j = 1; j < report.entries.size(); ++j)
        if (report.entries[j].cv_mae < report.entries[report.best_index].cv_mae)
            report.best_index = j;
    return {report.entries[report.best_index].hp, report};
}

} // namespace

std::pair<ForestHyperparams, SearchReport> randomized_search(const FabricDataset& ds,
                                                             const Vocabularies& vocabs,
                                                             TargetGroup group,
                                                             const SearchSpace& space, int iters,
                                                             int k, std::uint64_t seed) {
    return run_search(ds, vocabs, group, iters, k, seed,
                      [&space](std::mt19937_64& rng) { return sample_hyperparams(space, rng); });
}

std::pair<ForestHyperparams, SearchReport> randomized_search(
    const FabricDataset& ds, const Vocabularies& vocabs, TargetGroup group,
    const std::vector<ForestHyperparams>& pool, int iters, int k, std::uint64_t seed) {
    if (pool.empty())
        raise(ErrorCode::EmptySpace, "candidate pool is empty");
    return run_search(ds, vocabs, group, iters, k, seed, [&pool](std::mt19937_64& rng) {
        return pool[rng_index(rng, pool.size())];
    });
}

} // namespace fabricphys
