#include "fabricphys/clothsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fabricphys/errors.hpp"

namespace fabricphys {

namespace {

int grid_count(double extent, double spacing, const char* what) {
    double cells = extent / spacing;
    double rounded = std::round(cells);
    if (!(extent > 0.0) || rounded < 1.0 || std::abs(cells - rounded) > 1e-9)
        raise(ErrorCode::InvalidSpec,
              std::string(what) + " must be a positive multiple of the particle spacing");
    return static_cast<int>(rounded) + 1;
}

} // namespace

int ClothSpec::nx() const { return grid_count(width_mm, spacing_mm, "width"); }
int ClothSpec::ny() const { return grid_count(height_mm, spacing_mm, "height"); }

std::vector<const std::vector<Element>*> SimState::element_tables() const {
    return {&stretch_warp, &stretch_weft, &shear_left, &shear_right, &bend_warp, &bend_weft};
}

SimState build_cloth(const ClothSpec& spec, const PhysicsParams& params) {
    if (!(spec.spacing_mm > 0.0))
        raise(ErrorCode::InvalidSpec, "particle spacing must be > 0");
    if (std::abs(spec.u_dir.norm() - 1.0) > 1e-9 || std::abs(spec.v_dir.norm() - 1.0) > 1e-9 ||
        std::abs(spec.u_dir.dot(spec.v_dir)) > 1e-9)
        raise(ErrorCode::InvalidSpec, "u_dir and v_dir must be orthonormal");
    if (auto bad = physics_invariant_violation(params); !bad.empty())
        raise(ErrorCode::InvalidParams, bad);

    const int nx = spec.nx();
    const int ny = spec.ny();
    const double s = spec.spacing_mm;

    SimState state;
    state.nx = nx;
    state.ny = ny;
    state.spacing_mm = s;
    state.positions.resize(static_cast<std::size_t>(nx) * ny);
    state.velocities.assign(state.positions.size(), Vec3{});
    state.masses.resize(state.positions.size());
    state.pinned.assign(state.positions.size(), false);

    auto index = [nx](int i, int j) { return static_cast<std::size_t>(j) * nx + i; };

    // particle mass = areal density * owned cell area; grams with spacing in m
    const double cell_mass = params.density_gsm * (s / 1000.0) * (s / 1000.0);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            state.positions[index(i, j)] = spec.origin + spec.u_dir * (i * s) + spec.v_dir * (j * s);
            double share = ((i == 0 || i == nx - 1) ? 0.5 : 1.0) * ((j == 0 || j == ny - 1) ? 0.5 : 1.0);
            state.masses[index(i, j)] = cell_mass * share;
        }

    for (int p : spec.pinned) {
        if (p < 0 || static_cast<std::size_t>(p) >= state.positions.size())
            raise(ErrorCode::InvalidSpec, "pinned index out of range");
        state.pinned[static_cast<std::size_t>(p)] = true;
    }

    constexpr std::size_t kWarp = static_cast<std::size_t>(GridDirection::Warp);
    constexpr std::size_t kWeft = static_cast<std::size_t>(GridDirection::Weft);

    auto make = [](int a, int b, double rest, double k, double k_buckled, double ratio) {
        Element e;
        e.a = a;
        e.b = b;
        e.rest = rest;
        e.k = k;
        e.k_buckled = k_buckled;
        e.buckle_ratio = ratio;
        return e;
    };

    // stretch: k_e = stretch(dir) * (perpendicular spacing / rest length)
    const double k_stretch_warp = params.stretch[0] * (s / s);
    const double k_stretch_weft = params.stretch[1] * (s / s);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i + 1 < nx; ++i)
            state.stretch_warp.push_back(make(static_cast<int>(index(i, j)),
                                              static_cast<int>(index(i + 1, j)), s, k_stretch_warp,
                                              k_stretch_warp, -1.0));
    for (int j = 0; j + 1 < ny; ++j)
        for (int i = 0; i < nx; ++i)
            state.stretch_weft.push_back(make(static_cast<int>(index(i, j)),
                                              static_cast<int>(index(i, j + 1)), s, k_stretch_weft,
                                              k_stretch_weft, -1.0));

    // shear: both diagonal families, mean of the left/right components
    const double rest_diag = s * std::sqrt(2.0);
    const double k_shear = 0.5 * (params.shear[0] + params.shear[1]) * (s / rest_diag);
    for (int j = 0; j + 1 < ny; ++j)
        for (int i = 0; i + 1 < nx; ++i) {
            state.shear_left.push_back(make(static_cast<int>(index(i, j)),
                                            static_cast<int>(index(i + 1, j + 1)), rest_diag,
                                            k_shear, k_shear, -1.0));
            state.shear_right.push_back(make(static_cast<int>(index(i + 1, j)),
                                             static_cast<int>(index(i, j + 1)), rest_diag, k_shear,
                                             k_shear, -1.0));
        }
    // bend: second neighbors along each axis; constant bend(dir)/s^2 switches
    // to buckle_stiff(dir)/s^2 below the compression threshold
    const double rest_bend = 2.0 * s;
    const double s2 = s * s;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i + 2 < nx; ++i)
            state.bend_warp.push_back(make(static_cast<int>(index(i, j)),
                                           static_cast<int>(index(i + 2, j)), rest_bend,
                                           params.bend[kWarp] / s2, params.buckle_stiff[kWarp] / s2,
                                           params.buckle_ratio[kWarp] / 100.0));
    for (int j = 0; j + 2 < ny; ++j)
        for (int i = 0; i < nx; ++i)
            state.bend_weft.push_back(make(static_cast<int>(index(i, j)),
                                           static_cast<int>(index(i, j + 2)), rest_bend,
                                           params.bend[kWeft] / s2, params.buckle_stiff[kWeft] / s2,
                                           params.buckle_ratio[kWeft] / 100.0));
    return state;
}

namespace {

double active_constant(const Element& e, double length) {
    if (e.buckle_ratio >= 0.0 && length < e.buckle_ratio * e.rest) return e.k_buckled;
    return e.k;
}

double max_spring_constant(const SimState& state) {
    double k_max = 0.0;
    for (const auto* table : state.element_tables())
        for (const auto& e : *table) k_max = std::max({k_max, e.k, e.k_buckled});
    return k_max;
}

} // namespace

double stable_dt(const SimState& state) {
    double m_min = std::numeric_limits<double>::infinity();
    for (double m : state.masses) m_min = std::min(m_min, m);
    double k_max = max_spring_constant(state);
    if (k_max <= 0.0) return std::numeric_limits<double>::infinity();
    return 0.5 * std::sqrt(m_min / k_max);
}

int auto_substeps(const SimState& state, const SimConfig& config) {
    double bound = stable_dt(state);
    if (!std::isfinite(bound) || bound <= 0.0) return 1;
    return std::max(1, static_cast<int>(std::ceil(config.frame_dt / bound)));
}

void step(SimState& state, const SimConfig& config, const PhysicsParams& params) {
    if (!(config.frame_dt > 0.0))
        raise(ErrorCode::UnstableConfig, "frame_dt must be > 0");
    int substeps = config.substeps > 0 ? config.substeps : auto_substeps(state, config);
    double dt = config.frame_dt / static_cast<double>(substeps);
    if (dt > stable_dt(state) * (1.0 + 1e-12))
        raise(ErrorCode::UnstableConfig,
              "substep " + std::to_string(dt) + " s exceeds the stability bound " +
                  std::to_string(stable_dt(state)) + " s");

    const std::size_t n = state.particle_count();
    std::vector<Vec3> forces(n);

    for (int sub = 0; sub < substeps; ++sub) {
        for (std::size_t p = 0; p < n; ++p) {
            forces[p] = Vec3{0.0, 0.0, -config.gravity * state.masses[p]};
            forces[p] -= state.velocities[p] * config.air_damping;
        }
        for (const auto* table : state.element_tables()) {
            for (const auto& e : *table) {
                std::size_t a = static_cast<std::size_t>(e.a);
                std::size_t b = static_cast<std::size_t>(e.b);
                Vec3 d = state.positions[b] - state.positions[a];
                double length = d.norm();
                if (length <= 1e-12) continue;
                Vec3 dir = d / length;
                double k = active_constant(e, length);
                double magnitude = k * (length - e.rest);
                // internal damping acts along the element
                double rel = (state.velocities[b] - state.velocities[a]).dot(dir);
                magnitude += params.damping * rel;
                forces[a] += dir * magnitude;
                forces[b] -= dir * magnitude;
            }
        }
        for (std::size_t p = 0; p < n; ++p) {
            if (state.pinned[p]) {
                state.velocities[p] = Vec3{};
                continue;
            }
            state.velocities[p] += forces[p] * (dt / state.masses[p]);
            state.positions[p] += state.velocities[p] * dt;

            if (config.ground_height && state.positions[p].z < *config.ground_height) {
                state.positions[p].z = *config.ground_height;
                double impact = -state.velocities[p].z; // normal impulse per unit mass
                if (impact > 0.0) {
                    state.velocities[p].z = 0.0;
                    Vec3 tangent{state.velocities[p].x, state.velocities[p].y, 0.0};
                    double speed = tangent.norm();
                    if (speed > 0.0) {
                        double reduced = std::max(0.0, speed - params.friction * impact);
                        state.velocities[p].x *= reduced / speed;
                        state.velocities[p].y *= reduced / speed;
                    }
                }
            }
            if (!state.positions[p].finite())
                raise(ErrorCode::NumericalBlowup,
                      "non-finite position at substep " + std::to_string(sub));
        }
    }
}

Trajectory simulate(const ClothSpec& spec, const PhysicsParams& params, const SimConfig& config,
                    double duration_s) {
    if (duration_s < 0.0)
        raise(ErrorCode::UsageError, "duration must be >= 0");
    SimState state = build_cloth(spec, params);

    SimConfig resolved = config;
    if (resolved.substeps <= 0) resolved.substeps = auto_substeps(state, config);

    Trajectory traj;
    traj.nx = state.nx;
    traj.ny = state.ny;
    traj.faces = grid_triangles(state.nx, state.ny);
    traj.times.push_back(0.0);
    traj.frames.push_back(state.positions);

    int frames = static_cast<int>(std::llround(duration_s / resolved.frame_dt));
    for (int f = 0; f < frames; ++f) {
        step(state, resolved, params);
        traj.times.push_back(resolved.frame_dt * static_cast<double>(f + 1));
        traj.frames.push_back(state.positions);
    }
    return traj;
}

double mechanical_energy(const SimState& state, const SimConfig& config) {
    double energy = 0.0;
    for (std::size_t p = 0; p < state.particle_count(); ++p) {
        energy += 0.5 * state.masses[p] * state.velocities[p].norm2();
        energy += state.masses[p] * config.gravity * state.positions[p].z;
    }
    for (const auto* table : state.element_tables())
        for (const auto& e : *table) {
            double length = (state.positions[static_cast<std::size_t>(e.b)] -
                             state.positions[static_cast<std::size_t>(e.a)])
                                .norm();
            double k = active_constant(e, length);
            energy += 0.5 * k * (length - e.rest) * (length - e.rest);
        }
    return energy;
}

std::vector<std::array<int, 3>> grid_triangles(int nx, int ny) {
    std::vector<std::array<int, 3>> tris;
    auto index = [nx](int i, int j) { return j * nx + i; };
    for (int j = 0; j + 1 < ny; ++j)
        for (int i = 0; i + 1 < nx; ++i) {
            tris.push_back({index(i, j), index(i + 1, j), index(i + 1, j + 1)});
            tris.push_back({index(i, j), index(i + 1, j + 1), index(i, j + 1)});
        }
    return tris;
}

TriMesh frame_mesh(const Trajectory& traj, std::size_t frame) {
    if (frame >= traj.frame_count())
        raise(ErrorCode::UsageError, "frame index out of range");
    TriMesh mesh;
    mesh.vertices = traj.frames[frame];
    mesh.triangles = !traj.faces.empty() ? traj.faces : grid_triangles(traj.nx, traj.ny);
    return mesh;
}

} // namespace fabricphys
