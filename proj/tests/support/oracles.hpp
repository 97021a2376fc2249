// Independent reference implementations used by the unit and acceptance
// suites. Everything here is written with naive loops, on purpose, and must
// stay decoupled from the library's implementation paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fabricphys/geometry.hpp"
#include "fabricphys/tagparse.hpp"

namespace oracle {

using fabricphys::FiberComposition;
using fabricphys::TriMesh;
using fabricphys::Vec3;

// --- attribute metrics -------------------------------------------------------

inline double material_accuracy(const std::vector<FiberComposition>& gt,
                                const std::vector<FiberComposition>& pred) {
    double total = 0.0;
    for (std::size_t i = 0; i < gt.size(); ++i) {
        std::set<std::string> g, p;
        for (const auto& e : gt[i].entries) g.insert(e.fiber);
        for (const auto& e : pred[i].entries) p.insert(e.fiber);
        int tp = 0, fp = 0, fn = 0;
        for (const auto& f : p) {
            if (g.count(f)) tp++;
            else fp++;
        }
        for (const auto& f : g)
            if (!p.count(f)) fn++;
        total += static_cast<double>(tp) / static_cast<double>(tp + fp + fn);
    }
    return total / static_cast<double>(gt.size());
}

inline double material_f1(const std::vector<FiberComposition>& gt,
                          const std::vector<FiberComposition>& pred) {
    double total = 0.0;
    for (std::size_t i = 0; i < gt.size(); ++i) {
        std::set<std::string> g, p;
        for (const auto& e : gt[i].entries) g.insert(e.fiber);
        for (const auto& e : pred[i].entries) p.insert(e.fiber);
        int tp = 0, fp = 0, fn = 0;
        for (const auto& f : p) {
            if (g.count(f)) tp++;
            else fp++;
        }
        for (const auto& f : g)
            if (!p.count(f)) fn++;
        double prec = (tp + fp) ? static_cast<double>(tp) / (tp + fp) : 0.0;
        double rec = (tp + fn) ? static_cast<double>(tp) / (tp + fn) : 0.0;
        total += (prec + rec) > 0 ? 2 * prec * rec / (prec + rec) : 0.0;
    }
    return total / static_cast<double>(gt.size());
}

inline std::pair<double, double> percentage_mae_nmae(const std::vector<FiberComposition>& gt,
                                                     const std::vector<FiberComposition>& pred) {
    double mae = 0.0, nmae = 0.0;
    for (std::size_t i = 0; i < gt.size(); ++i) {
        std::set<std::string> fibers;
        for (const auto& e : gt[i].entries) fibers.insert(e.fiber);
        for (const auto& e : pred[i].entries) fibers.insert(e.fiber);
        double m = 0.0, n = 0.0;
        for (const auto& f : fibers) {
            double pg = 0.0, pp = 0.0;
            for (const auto& e : gt[i].entries)
                if (e.fiber == f) pg = e.percent;
            for (const auto& e : pred[i].entries)
                if (e.fiber == f) pp = e.percent;
            m += std::abs(pg - pp);
            n += std::abs(pg - pp) / std::max(pg, pp);
        }
        mae += m / static_cast<double>(fibers.size());
        nmae += n / static_cast<double>(fibers.size());
    }
    return {mae / static_cast<double>(gt.size()), nmae / static_cast<double>(gt.size())};
}

inline std::pair<double, double> categorical_accuracy_macro_f1(const std::vector<std::string>& gt,
                                                               const std::vector<std::string>& pred) {
    double correct = 0.0;
    for (std::size_t i = 0; i < gt.size(); ++i)
        if (gt[i] == pred[i]) correct += 1.0;

    std::set<std::string> present(gt.begin(), gt.end());
    present.insert(pred.begin(), pred.end());
    double f1_sum = 0.0;
    for (const auto& cls : present) {
        int tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < gt.size(); ++i) {
            if (pred[i] == cls && gt[i] == cls) tp++;
            else if (pred[i] == cls) fp++;
            else if (gt[i] == cls) fn++;
        }
        double prec = (tp + fp) ? static_cast<double>(tp) / (tp + fp) : 0.0;
        double rec = (tp + fn) ? static_cast<double>(tp) / (tp + fn) : 0.0;
        f1_sum += (prec + rec) > 0 ? 2 * prec * rec / (prec + rec) : 0.0;
    }
    return {correct / static_cast<double>(gt.size()),
            f1_sum / static_cast<double>(present.size())};
}

inline std::pair<double, double> continuous_mae_nmae(const std::vector<double>& gt,
                                                     const std::vector<double>& pred) {
    double mae = 0.0;
    for (std::size_t i = 0; i < gt.size(); ++i) mae += std::abs(gt[i] - pred[i]);
    mae /= static_cast<double>(gt.size());
    double lo = *std::min_element(gt.begin(), gt.end());
    double hi = *std::max_element(gt.begin(), gt.end());
    return {mae, mae / (hi - lo)};
}

// --- geometry -----------------------------------------------------------------

/// Triangle/box separating-axis test written independently of the library's
/// version: projects all 8 box corners instead of using the half-extent
/// shortcut.
inline bool tri_box_overlap_ref(const Vec3& center, const Vec3& half, const Vec3& a,
                                const Vec3& b, const Vec3& c) {
    std::vector<Vec3> axes = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    Vec3 e0 = b - a, e1 = c - b, e2 = a - c;
    axes.push_back(e0.cross(e1)); // triangle normal
    for (const Vec3& edge : {e0, e1, e2})
        for (const Vec3& unit : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}})
            axes.push_back(unit.cross(edge));

    for (const Vec3& axis : axes) {
        double tri_min = 1e300, tri_max = -1e300;
        for (const Vec3& v : {a, b, c}) {
            double t = (v - center).dot(axis);
            tri_min = std::min(tri_min, t);
            tri_max = std::max(tri_max, t);
        }
        double box_min = 1e300, box_max = -1e300;
        for (int sx = -1; sx <= 1; sx += 2)
            for (int sy = -1; sy <= 1; sy += 2)
                for (int sz = -1; sz <= 1; sz += 2) {
                    double t = Vec3{sx * half.x, sy * half.y, sz * half.z}.dot(axis);
                    box_min = std::min(box_min, t);
                    box_max = std::max(box_max, t);
                }
        if (tri_max < box_min || tri_min > box_max) return false;
    }
    return true;
}

/// Dense-grid occupancy IoU: visits every voxel of the joint bounding box and
/// tests all triangles of each mesh against it.
inline double voxel_iou_dense(const TriMesh& ma, const TriMesh& mb, double voxel) {
    Vec3 lo = ma.vertices.front(), hi = ma.vertices.front();
    for (const auto& v : ma.vertices) {
        lo = fabricphys::min_componentwise(lo, v);
        hi = fabricphys::max_componentwise(hi, v);
    }
    for (const auto& v : mb.vertices) {
        lo = fabricphys::min_componentwise(lo, v);
        hi = fabricphys::max_componentwise(hi, v);
    }
    long nx = static_cast<long>(std::floor((hi.x - lo.x) / voxel)) + 1;
    long ny = static_cast<long>(std::floor((hi.y - lo.y) / voxel)) + 1;
    long nz = static_cast<long>(std::floor((hi.z - lo.z) / voxel)) + 1;

    auto occupied = [&](const TriMesh& mesh, long ix, long iy, long iz) {
        Vec3 center = lo + Vec3{(ix + 0.5) * voxel, (iy + 0.5) * voxel, (iz + 0.5) * voxel};
        Vec3 half{voxel / 2, voxel / 2, voxel / 2};
        for (const auto& tri : mesh.triangles)
            if (tri_box_overlap_ref(center, half, mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                                    mesh.vertices[tri[2]]))
                return true;
        return false;
    };

    long inter = 0, uni = 0;
    for (long ix = 0; ix < nx; ++ix)
        for (long iy = 0; iy < ny; ++iy)
            for (long iz = 0; iz < nz; ++iz) {
                bool in_a = occupied(ma, ix, iy, iz);
                bool in_b = occupied(mb, ix, iy, iz);
                if (in_a && in_b) ++inter;
                if (in_a || in_b) ++uni;
            }
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

inline double chamfer_ref(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    auto one_way = [](const std::vector<Vec3>& from, const std::vector<Vec3>& to) {
        double sum = 0.0;
        for (const auto& p : from) {
            double best = 1e300;
            for (const auto& q : to) best = std::min(best, (p - q).norm());
            sum += best;
        }
        return sum / static_cast<double>(from.size());
    };
    return 0.5 * (one_way(a, b) + one_way(b, a));
}

// --- regression tree splits --------------------------------------------------------

/// Brute-force best MAE split on one feature column: tries every midpoint,
/// recomputing child medians and absolute deviations from scratch.
struct BestSplit {
    bool found = false;
    double threshold = 0.0;
    double cost = 0.0; // summed |y - median| over both children
};

inline double abs_dev_about_median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    double median = (n % 2 == 1) ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    double dev = 0.0;
    for (double v : values) dev += std::abs(v - median);
    return dev;
}

inline BestSplit best_split_1d(const std::vector<double>& x, const std::vector<double>& y,
                               std::size_t min_leaf = 1) {
    std::vector<double> unique_sorted = x;
    std::sort(unique_sorted.begin(), unique_sorted.end());
    unique_sorted.erase(std::unique(unique_sorted.begin(), unique_sorted.end()),
                        unique_sorted.end());
    BestSplit best;
    for (std::size_t i = 0; i + 1 < unique_sorted.size(); ++i) {
        double threshold = 0.5 * (unique_sorted[i] + unique_sorted[i + 1]);
        std::vector<double> left, right;
        for (std::size_t r = 0; r < x.size(); ++r)
            (x[r] <= threshold ? left : right).push_back(y[r]);
        if (left.size() < min_leaf || right.size() < min_leaf) continue;
        double cost = abs_dev_about_median(left) + abs_dev_about_median(right);
        if (!best.found || cost < best.cost) {
            best.found = true;
            best.threshold = threshold;
            best.cost = cost;
        }
    }
    return best;
}

} // namespace oracle
