#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pbfv/flux.hpp"
#include "pbfv/germ.hpp"
#include "pbfv/state.hpp"

namespace pbfv {

enum class VelocityUpdate { Explicit, Implicit };
enum class DomainKind { Padded, Periodic };

struct SchemeConfig {
    GermParams germ{};
    BulkFluxKind bulk = BulkFluxKind::Godunov;
    InterfaceFluxKind iface = InterfaceFluxKind::MaxGerm;
    double mu = 0.5;
    VelocityUpdate velocity_update = VelocityUpdate::Explicit;
    DomainKind domain = DomainKind::Padded;
    double T = 1.0;
    double m_p = 1.0;
    std::optional<double> dt_override;
    // Periodic: half-width a of the ring. Padded: lower bound on the half-width
    // (the mesh is widened automatically so nothing reaches the boundary).
    std::optional<double> half_width;

    void validate() const;
};

// A boundary cell of a padded mesh changed, or the periodic ring is too small.
class DisturbanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StepResult {
    FluidGrid grid;
    ParticleState particle;
    double outflow = 0.0;  // dt * (F_right - F_left) through the outer faces
};

struct Trajectory {
    std::vector<double> times;
    std::vector<std::pair<double, double>> particle_path;  // (h, v)
    std::vector<std::pair<double, FluidGrid>> snapshots;
    std::vector<DiagnosticsRecord> diagnostics_log;
    double m_p = 1.0;
    DomainKind domain = DomainKind::Padded;
};

struct RunOptions {
    std::vector<double> snapshot_times;
    bool store_all_steps = false;
};

struct SolutionSample {
    double u = 0.0;
    double h = 0.0;
    double v = 0.0;
};

std::pair<FluidGrid, ParticleState> init_state(const PiecewiseConstant& u0, double h0,
                                               double v0, const SchemeConfig& cfg, double dx);

// Time step from a known Lipschitz constant.
double compute_dt(double L, double dx, const SchemeConfig& cfg);
double compute_dt(const FluidGrid& grid, const ParticleState& particle, const SchemeConfig& cfg,
                  const BoundsEnvelope& env);

StepResult step(const FluidGrid& grid, const ParticleState& particle, const SchemeConfig& cfg,
                double dt);
StepResult step_implicit(const FluidGrid& grid, const ParticleState& particle,
                         const SchemeConfig& cfg, double dt);
// Root of w - v - (dt/m_p)(g- - g+)(u0, u1, w).
double solve_implicit_velocity(double u0, double u1, double v, double dt, const SchemeConfig& cfg);

Trajectory run(const PiecewiseConstant& u0, double h0, double v0, const SchemeConfig& cfg,
               double dx, const RunOptions& opts = {});

SolutionSample sample_solution(const Trajectory& traj, double t, double x);
double sample_h(const Trajectory& traj, double t);
double sample_v(const Trajectory& traj, double t);

}  // namespace pbfv
