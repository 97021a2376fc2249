#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fabricphys/geometry.hpp"
#include "fabricphys/physics_params.hpp"

namespace fabricphys {

/// Rectangular particle grid, warp along u, weft along v. Dimensions must be
/// positive multiples of the particle spacing.
struct ClothSpec {
    double width_mm = 200.0;
    double height_mm = 200.0;
    double spacing_mm = 20.0;
    std::vector<int> pinned; // particle indices, index = j * nx + i
    Vec3 origin{0, 0, 0};
    Vec3 u_dir{1, 0, 0}; // unit, orthogonal to v_dir
    Vec3 v_dir{0, 1, 0};

    int nx() const; // particles along u
    int ny() const; // particles along v
};

struct SimConfig {
    double frame_dt = 0.042; // s
    int substeps = 0;        // 0 = derived from the stability bound
    double gravity = 9800.0; // mm/s^2, acting along -z
    double air_damping = 1.0;
    std::optional<double> ground_height; // collision plane z, mm
};

/// One spring family entry. Buckling elements carry an alternate constant
/// that engages once the element compresses below buckle_ratio * rest.
struct Element {
    int a = 0, b = 0;
    double rest = 0.0;        // mm
    double k = 0.0;           // g/s^2
    double k_buckled = 0.0;   // g/s^2
    double buckle_ratio = -1.0; // fraction of rest length; < 0 disables
};

struct SimState {
    int nx = 0, ny = 0;
    double spacing_mm = 0.0;
    std::vector<Vec3> positions;  // mm
    std::vector<Vec3> velocities; // mm/s
    std::vector<double> masses;   // g
    std::vector<bool> pinned;
    std::vector<Element> stretch_warp, stretch_weft;
    std::vector<Element> shear_left, shear_right; // the two diagonal families
    std::vector<Element> bend_warp, bend_weft;

    std::size_t particle_count() const { return positions.size(); }
    std::vector<const std::vector<Element>*> element_tables() const;
};

struct Trajectory {
    int nx = 0, ny = 0; // 0 when the trajectory was imported from loose meshes
    std::vector<double> times;                 // strictly increasing, s
    std::vector<std::vector<Vec3>> frames;     // positions per frame
    std::vector<std::array<int, 3>> faces;     // shared across frames

    std::size_t frame_count() const { return frames.size(); }
};

/// Lumped-mass particle grid: interior particles carry one cell of fabric,
/// edges a half, corners a quarter. Stretch springs along each axis, shear
/// springs on both cell diagonals (mean of the two shear components), bend
/// springs between second neighbors along each axis with per-direction
/// buckling.
SimState build_cloth(const ClothSpec& spec, const PhysicsParams& params);

/// Largest stable substep: dt <= 0.5 * sqrt(m_min / k_max).
double stable_dt(const SimState& state);
int auto_substeps(const SimState& state, const SimConfig& config);

/// One frame of semi-implicit Euler substeps: spring + gravity + air and
/// internal damping forces, optional ground plane with Coulomb friction.
/// Raises UnstableConfig up front and NumericalBlowup (with the substep
/// index) if positions stop being finite.
void step(SimState& state, const SimConfig& config, const PhysicsParams& params);

/// Snapshots at every frame boundary, including t = 0.
Trajectory simulate(const ClothSpec& spec, const PhysicsParams& params, const SimConfig& config,
                    double duration_s);

/// Kinetic + spring potential + gravitational energy (g*mm^2/s^2). The
/// potential uses each element's currently active constant.
double mechanical_energy(const SimState& state, const SimConfig& config);

/// Grid faces as triangles (two per cell, consistent winding).
std::vector<std::array<int, 3>> grid_triangles(int nx, int ny);

TriMesh frame_mesh(const Trajectory& traj, std::size_t frame);

// --- trajectory I/O -----------------------------------------------------------

enum class TrajectoryFormat { ObjSequence, Json };

/// OBJ sequence: frame_0000.obj, ... with identical face blocks; JSON: one
/// document. Re-import reproduces positions to 1e-6 mm.
std::vector<std::string> export_trajectory(const Trajectory& traj, const std::string& out_dir,
                                           TrajectoryFormat format);

Trajectory import_trajectory(const std::string& path_or_dir);

} // namespace fabricphys
