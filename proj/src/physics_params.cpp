#include "fabricphys/physics_params.hpp"

#include <cmath>

#include "fabricphys/errors.hpp"

namespace fabricphys {

const std::array<std::string, kPhysicsComponentCount>& physics_component_names() {
    static const std::array<std::string, kPhysicsComponentCount> names = {
        "density_gsm", "thickness_mm", "friction", "damping",
        "buckle_stiff_bias_l", "buckle_stiff_bias_r", "buckle_stiff_warp", "buckle_stiff_weft",
        "buckle_ratio_bias_l", "buckle_ratio_bias_r", "buckle_ratio_warp", "buckle_ratio_weft",
        "bend_bias_l", "bend_bias_r", "bend_warp", "bend_weft",
        "shear_l", "shear_r",
        "stretch_warp", "stretch_weft",
    };
    return names;
}

double get_physics_component(const PhysicsParams& p, std::size_t index) {
    switch (index) {
        case 0: return p.density_gsm;
        case 1: return p.thickness_mm;
        case 2: return p.friction;
        case 3: return p.damping;
        case 4: case 5: case 6: case 7: return p.buckle_stiff[index - 4];
        case 8: case 9: case 10: case 11: return p.buckle_ratio[index - 8];
        case 12: case 13: case 14: case 15: return p.bend[index - 12];
        case 16: case 17: return p.shear[index - 16];
        case 18: case 19: return p.stretch[index - 18];
    }
    raise(ErrorCode::DimensionMismatch, "physics component index out of range");
}

void set_physics_component(PhysicsParams& p, std::size_t index, double value) {
    switch (index) {
        case 0: p.density_gsm = value; return;
        case 1: p.thickness_mm = value; return;
        case 2: p.friction = value; return;
        case 3: p.damping = value; return;
        case 4: case 5: case 6: case 7: p.buckle_stiff[index - 4] = value; return;
        case 8: case 9: case 10: case 11: p.buckle_ratio[index - 8] = value; return;
        case 12: case 13: case 14: case 15: p.bend[index - 12] = value; return;
        case 16: case 17: p.shear[index - 16] = value; return;
        case 18: case 19: p.stretch[index - 18] = value; return;
    }
    raise(ErrorCode::DimensionMismatch, "physics component index out of range");
}

bool physics_component_is_stiffness(std::size_t index) {
    // buckling stiffness, bending, shear, stretch
    return (index >= 4 && index <= 7) || (index >= 12 && index <= 19);
}

std::string physics_invariant_violation(const PhysicsParams& p) {
    const auto& names = physics_component_names();
    for (std::size_t i = 0; i < kPhysicsComponentCount; ++i) {
        double v = get_physics_component(p, i);
        if (!std::isfinite(v)) return names[i] + " is not finite";
        if (v < 0.0) return names[i] + " < 0";
    }
    if (!(p.density_gsm > 0.0)) return "density_gsm must be > 0";
    if (!(p.thickness_mm > 0.0)) return "thickness_mm must be > 0";
    if (!(p.stretch[0] > 0.0)) return "stretch_warp must be > 0";
    if (!(p.stretch[1] > 0.0)) return "stretch_weft must be > 0";
    return "";
}

bool ParamBounds::contains(const PhysicsParams& p) const {
    for (std::size_t i = 0; i < kPhysicsComponentCount; ++i) {
        double v = get_physics_component(p, i);
        if (v < limits[i].first || v > limits[i].second) return false;
    }
    return true;
}

std::string to_string(TargetGroup g) {
    switch (g) {
        case TargetGroup::Bend: return "bend";
        case TargetGroup::Stretch: return "stretch";
        case TargetGroup::Shear: return "shear";
        case TargetGroup::BuckleStiff: return "buckle_stiff";
        case TargetGroup::BuckleRatio: return "buckle_ratio";
    }
    return "?";
}

TargetGroup parse_target_group(const std::string& name) {
    for (TargetGroup g : kAllTargetGroups)
        if (name == to_string(g)) return g;
    raise(ErrorCode::UsageError, "unknown target group '" + name + "'");
}

namespace {
std::pair<std::size_t, std::size_t> group_span(TargetGroup g) {
    // offsets into the canonical component order
    switch (g) {
        case TargetGroup::BuckleStiff: return {4, 4};
        case TargetGroup::BuckleRatio: return {8, 4};
        case TargetGroup::Bend: return {12, 4};
        case TargetGroup::Shear: return {16, 2};
        case TargetGroup::Stretch: return {18, 2};
    }
    return {0, 0};
}
} // namespace

std::vector<std::string> target_group_components(TargetGroup g) {
    auto [offset, count] = group_span(g);
    const auto& names = physics_component_names();
    return {names.begin() + offset, names.begin() + offset + count};
}

std::vector<double> get_target_group(const PhysicsParams& p, TargetGroup g) {
    auto [offset, count] = group_span(g);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = get_physics_component(p, offset + i);
    return out;
}

void set_target_group(PhysicsParams& p, TargetGroup g, const std::vector<double>& values) {
    auto [offset, count] = group_span(g);
    if (values.size() != count)
        raise(ErrorCode::DimensionMismatch, "wrong number of values for group " + to_string(g));
    for (std::size_t i = 0; i < count; ++i) set_physics_component(p, offset + i, values[i]);
}

} // namespace fabricphys
