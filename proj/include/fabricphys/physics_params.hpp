#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace fabricphys {

/// Directional component order used everywhere a 4-vector appears.
enum class GridDirection { BiasLeft = 0, BiasRight = 1, Warp = 2, Weft = 3 };

/// Full simulator parameter set for one fabric.
/// Stiffness units: buckling/bending g*mm^2/s^2, shear/stretch g/s^2.
struct PhysicsParams {
    double density_gsm = 0.0;  // areal density, g/m^2
    double thickness_mm = 0.0;
    double friction = 0.0;
    double damping = 0.0; // internal damping
    std::array<double, 4> buckle_stiff{}; // bias_l, bias_r, warp, weft
    std::array<double, 4> buckle_ratio{}; // percent of rest length
    std::array<double, 4> bend{};         // bias_l, bias_r, warp, weft
    std::array<double, 2> shear{};        // l, r
    std::array<double, 2> stretch{};      // warp, weft
};

/// Scalar components of PhysicsParams in canonical (CSV schema) order.
inline constexpr std::size_t kPhysicsComponentCount = 20;

const std::array<std::string, kPhysicsComponentCount>& physics_component_names();

double get_physics_component(const PhysicsParams& p, std::size_t index);
void set_physics_component(PhysicsParams& p, std::size_t index, double value);

/// True for components sampled log-uniformly in the random baseline.
bool physics_component_is_stiffness(std::size_t index);

/// "" when valid, else a description of the violated invariant.
std::string physics_invariant_violation(const PhysicsParams& p);

struct ParamBounds {
    std::array<std::pair<double, double>, kPhysicsComponentCount> limits{};

    bool contains(const PhysicsParams& p) const;
};

/// Output component groups, one forest per group.
enum class TargetGroup { Bend, Stretch, Shear, BuckleStiff, BuckleRatio };

inline constexpr std::array<TargetGroup, 5> kAllTargetGroups = {
    TargetGroup::Bend, TargetGroup::Stretch, TargetGroup::Shear,
    TargetGroup::BuckleStiff, TargetGroup::BuckleRatio};

std::string to_string(TargetGroup g);
TargetGroup parse_target_group(const std::string& name);

/// Component names (CSV schema names) belonging to a group.
std::vector<std::string> target_group_components(TargetGroup g);

/// Read/write a group's values as a flat vector.
std::vector<double> get_target_group(const PhysicsParams& p, TargetGroup g);
void set_target_group(PhysicsParams& p, TargetGroup g, const std::vector<double>& values);

} // namespace fabricphys
