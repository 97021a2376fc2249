#include "fabricphys/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <unordered_set>

#include "fabricphys/errors.hpp"

namespace fabricphys {

namespace {

std::set<std::string> fiber_set(const FiberComposition& comp) {
    std::set<std::string> s;
    for (const auto& e : comp.entries) s.insert(e.fiber);
    return s;
}

} // namespace

MaterialSetScore material_set_score(const std::vector<FiberComposition>& gt,
                                    const std::vector<FiberComposition>& pred) {
    if (gt.size() != pred.size())
        raise(ErrorCode::LengthMismatch, "gt and pred have different lengths");
    if (gt.empty())
        raise(ErrorCode::LengthMismatch, "no examples");

    MaterialSetScore score;
    double acc_sum = 0.0, f1_sum = 0.0;
    for (std::size_t i = 0; i < gt.size(); ++i) {
        auto g = fiber_set(gt[i]);
        auto p = fiber_set(pred[i]);
        MaterialSetScore::Counts c;
        for (const auto& fiber : p)
            (g.count(fiber) ? c.tp : c.fp) += 1;
        for (const auto& fiber : g)
            if (!p.count(fiber)) c.fn += 1;

        double denom = static_cast<double>(c.tp + c.fp + c.fn);
        acc_sum += denom > 0 ? static_cast<double>(c.tp) / denom : 0.0;

        double precision = c.tp + c.fp > 0 ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp) : 0.0;
        double recall = c.tp + c.fn > 0 ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn) : 0.0;
        f1_sum += precision + recall > 0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
        score.per_example.push_back(c);
    }
    score.accuracy = acc_sum / static_cast<double>(gt.size());
    score.f1 = f1_sum / static_cast<double>(gt.size());
    return score;
}

PercentageErrorScore percentage_error(const std::vector<FiberComposition>& gt,
                                      const std::vector<FiberComposition>& pred) {
    if (gt.size() != pred.size())
        raise(ErrorCode::LengthMismatch, "gt and pred have different lengths");
    if (gt.empty())
        raise(ErrorCode::LengthMismatch, "no examples");

    PercentageErrorScore score;
    for (std::size_t i = 0; i < gt.size(); ++i) {
        std::map<std::string, double> g, p;
        for (const auto& e : gt[i].entries) g[e.fiber] = e.percent;
        for (const auto& e : pred[i].entries) p[e.fiber] = e.percent;
        std::set<std::string> fibers;
        for (const auto& [fiber, _] : g) fibers.insert(fiber);
        for (const auto& [fiber, _] : p) fibers.insert(fiber);

        double mae_i = 0.0, nmae_i = 0.0;
        for (const auto& fiber : fibers) {
            double pg = g.count(fiber) ? g[fiber] : 0.0;
            double pp = p.count(fiber) ? p[fiber] : 0.0;
            mae_i += std::abs(pg - pp);
            nmae_i += std::abs(pg - pp) / std::max(pg, pp); // > 0 on the union set
        }
        score.mae += mae_i / static_cast<double>(fibers.size());
        score.nmae += nmae_i / static_cast<double>(fibers.size());
    }
    score.mae /= static_cast<double>(gt.size());
    score.nmae /= static_cast<double>(gt.size());
    return score;
}

CategoricalScore categorical_scores(const std::vector<std::string>& gt,
                                    const std::vector<std::string>& pred,
                                    const std::vector<std::string>& classes) {
    if (gt.size() != pred.size())
        raise(ErrorCode::LengthMismatch, "gt and pred have different lengths");
    if (gt.empty())
        raise(ErrorCode::LengthMismatch, "no examples");

    std::set<std::string> known(classes.begin(), classes.end());
    for (const auto& label : gt)
        if (!known.count(label)) raise(ErrorCode::UnknownLabel, "gt label '" + label + "'");
    for (const auto& label : pred)
        if (!known.count(label)) raise(ErrorCode::UnknownLabel, "pred label '" + label + "'");

    CategoricalScore score;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < gt.size(); ++i)
        if (gt[i] == pred[i]) ++correct;
    score.accuracy = static_cast<double>(correct) / static_cast<double>(gt.size());

    // macro-F1 over classes present in gt or pred
    std::set<std::string> present;
    for (const auto& label : gt) present.insert(label);
    for (const auto& label : pred) present.insert(label);

    double f1_sum = 0.0;
    for (const auto& cls : present) {
        std::size_t tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < gt.size(); ++i) {
            if (pred[i] == cls && gt[i] == cls) ++tp;
            else if (pred[i] == cls) ++fp;
            else if (gt[i] == cls) ++fn;
        }
        double precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
        double recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
        f1_sum += precision + recall > 0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
    }
    score.macro_f1 = f1_sum / static_cast<double>(present.size());
    return score;
}

ContinuousError continuous_error(std::span<const double> gt, std::span<const double> pred) {
    if (gt.size() != pred.size())
        raise(ErrorCode::LengthMismatch, "gt and pred have different lengths");
    if (gt.empty())
        raise(ErrorCode::LengthMismatch, "no values");

    ContinuousError err;
    double lo = gt[0], hi = gt[0];
    for (std::size_t i = 0; i < gt.size(); ++i) {
        err.mae += std::abs(gt[i] - pred[i]);
        lo = std::min(lo, gt[i]);
        hi = std::max(hi, gt[i]);
    }
    err.mae /= static_cast<double>(gt.size());
    if (hi - lo > 0.0) err.nmae = err.mae / (hi - lo);
    return err;
}

double chamfer(std::span<const Vec3> a, std::span<const Vec3> b) {
    if (a.empty() || b.empty())
        raise(ErrorCode::EmptyCloud, "chamfer of an empty point set");

    auto directed = [](std::span<const Vec3> from, std::span<const Vec3> to) {
        double sum = 0.0;
        for (const auto& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : to) best = std::min(best, (p - q).norm2());
            sum += std::sqrt(best);
        }
        return sum / static_cast<double>(from.size());
    };
    return 0.5 * (directed(a, b) + directed(b, a));
}

// --- triangle/box overlap (separating axis test) -----------------------------

namespace {

bool axis_separates(const Vec3& axis, const Vec3& v0, const Vec3& v1, const Vec3& v2,
                    const Vec3& half) {
    double p0 = v0.dot(axis);
    double p1 = v1.dot(axis);
    double p2 = v2.dot(axis);
    double r = half.x * std::abs(axis.x) + half.y * std::abs(axis.y) + half.z * std::abs(axis.z);
    double lo = std::min({p0, p1, p2});
    double hi = std::max({p0, p1, p2});
    return lo > r || hi < -r;
}

} // namespace

bool triangle_box_overlap(const Vec3& box_center, const Vec3& box_half, const Vec3& tv0,
                          const Vec3& tv1, const Vec3& tv2) {
    Vec3 v0 = tv0 - box_center;
    Vec3 v1 = tv1 - box_center;
    Vec3 v2 = tv2 - box_center;

    // box face normals
    if (std::min({v0.x, v1.x, v2.x}) > box_half.x || std::max({v0.x, v1.x, v2.x}) < -box_half.x)
        return false;
    if (std::min({v0.y, v1.y, v2.y}) > box_half.y || std::max({v0.y, v1.y, v2.y}) < -box_half.y)
        return false;
    if (std::min({v0.z, v1.z, v2.z}) > box_half.z || std::max({v0.z, v1.z, v2.z}) < -box_half.z)
        return false;

    // 9 cross-product axes
    Vec3 e0 = v1 - v0, e1 = v2 - v1, e2 = v0 - v2;
    const Vec3 box_axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (const Vec3& edge : {e0, e1, e2})
        for (const Vec3& axis : box_axes) {
            Vec3 cross = axis.cross(edge);
            if (cross.norm2() < 1e-24) continue; // parallel, covered by other axes
            if (axis_separates(cross, v0, v1, v2, box_half)) return false;
        }

    // triangle plane
    Vec3 normal = e0.cross(e1);
    if (axis_separates(normal, v0, v1, v2, box_half)) return false;
    return true;
}

namespace {

struct VoxelKey {
    // packed 21-bit signed indices
    static std::uint64_t pack(long ix, long iy, long iz) {
        auto enc = [](long v) { return static_cast<std::uint64_t>(v + (1L << 20)) & 0x1FFFFF; };
        return enc(ix) | (enc(iy) << 21) | (enc(iz) << 42);
    }
};

void voxelize(const TriMesh& mesh, const Vec3& anchor, double voxel,
              std::unordered_set<std::uint64_t>& occupied) {
    for (const auto& tri : mesh.triangles) {
        const Vec3& a = mesh.vertices[static_cast<std::size_t>(tri[0])];
        const Vec3& b = mesh.vertices[static_cast<std::size_t>(tri[1])];
        const Vec3& c = mesh.vertices[static_cast<std::size_t>(tri[2])];
        Vec3 lo = min_componentwise(a, min_componentwise(b, c)) - anchor;
        Vec3 hi = max_componentwise(a, max_componentwise(b, c)) - anchor;
        long ix0 = static_cast<long>(std::floor(lo.x / voxel));
        long iy0 = static_cast<long>(std::floor(lo.y / voxel));
        long iz0 = static_cast<long>(std::floor(lo.z / voxel));
        long ix1 = static_cast<long>(std::floor(hi.x / voxel));
        long iy1 = static_cast<long>(std::floor(hi.y / voxel));
        long iz1 = static_cast<long>(std::floor(hi.z / voxel));
        Vec3 half(voxel / 2, voxel / 2, voxel / 2);
        for (long ix = ix0; ix <= ix1; ++ix)
            for (long iy = iy0; iy <= iy1; ++iy)
                for (long iz = iz0; iz <= iz1; ++iz) {
                    Vec3 center = anchor + Vec3((ix + 0.5) * voxel, (iy + 0.5) * voxel,
                                                (iz + 0.5) * voxel);
                    if (triangle_box_overlap(center, half, a, b, c))
                        occupied.insert(VoxelKey::pack(ix, iy, iz));
                }
    }
}

} // namespace

double voxel_iou(const TriMesh& a, const TriMesh& b, double voxel_size) {
    if (a.empty() || b.empty())
        raise(ErrorCode::EmptyMesh, "voxel IoU of an empty mesh");
    if (!(voxel_size > 0.0))
        raise(ErrorCode::UsageError, "voxel size must be > 0");

    // joint bounding-box min corner anchors the grid
    Vec3 anchor = a.vertices.front();
    for (const auto& v : a.vertices) anchor = min_componentwise(anchor, v);
    for (const auto& v : b.vertices) anchor = min_componentwise(anchor, v);

    std::unordered_set<std::uint64_t> occ_a, occ_b;
    voxelize(a, anchor, voxel_size, occ_a);
    voxelize(b, anchor, voxel_size, occ_b);

    std::size_t intersection = 0;
    for (std::uint64_t key : occ_a)
        if (occ_b.count(key)) ++intersection;
    std::size_t union_count = occ_a.size() + occ_b.size() - intersection;
    if (union_count == 0) return 0.0;
    return static_cast<double>(intersection) / static_cast<double>(union_count);
}

double weighted_cross_entropy(std::span<const double> token_probs, std::span<const int> targets,
                              std::span<const double> class_weights) {
    if (token_probs.size() != targets.size())
        raise(ErrorCode::LengthMismatch, "token probabilities and targets differ in length");
    double loss = 0.0;
    for (std::size_t i = 0; i < token_probs.size(); ++i) {
        double p = token_probs[i];
        if (!(p > 0.0) || p > 1.0)
            raise(ErrorCode::ZeroProbability,
                  "probability " + std::to_string(p) + " at position " + std::to_string(i) +
                      " outside (0, 1]");
        int cls = targets[i];
        if (cls < 0 || static_cast<std::size_t>(cls) >= class_weights.size())
            raise(ErrorCode::UnknownLabel, "target id " + std::to_string(cls) + " has no weight");
        double w = class_weights[static_cast<std::size_t>(cls)];
        if (w < 0.0)
            raise(ErrorCode::UsageError, "negative class weight");
        loss -= w * std::log(p);
    }
    return loss;
}

std::map<std::string, double> inverse_frequency_weights(
    const std::map<std::string, std::uint64_t>& class_counts) {
    if (class_counts.empty())
        raise(ErrorCode::ZeroCount, "no classes");
    std::uint64_t total = 0;
    for (const auto& [cls, count] : class_counts) {
        if (count == 0)
            raise(ErrorCode::ZeroCount, "class '" + cls + "' has zero count");
        total += count;
    }
    std::map<std::string, double> weights;
    double n_classes = static_cast<double>(class_counts.size());
    for (const auto& [cls, count] : class_counts)
        weights[cls] = static_cast<double>(total) / (n_classes * static_cast<double>(count));
    return weights;
}

} // namespace fabricphys
