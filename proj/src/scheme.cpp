#include "pbfv/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pbfv/diagnostics.hpp"

namespace pbfv {

void SchemeConfig::validate() const {
    if (!(germ.lambda > 0.0) || !std::isfinite(germ.lambda))
        throw std::invalid_argument("lambda must be > 0");
    if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("mu must be > 0");
    if (!(T >= 0.0) || !std::isfinite(T)) throw std::invalid_argument("T must be >= 0");
    if (!(m_p > 0.0) || !std::isfinite(m_p)) throw std::invalid_argument("mass must be > 0");
    if (dt_override && !(*dt_override > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (half_width && !(*half_width > 0.0)) throw std::invalid_argument("half_width must be > 0");
    if (domain == DomainKind::Periodic && !half_width)
        throw std::invalid_argument("periodic domain needs half_width");
}

namespace {

constexpr int kGuardCells = 2;
constexpr std::ptrdiff_t kPadMargin = 4;

double cell_average(const PiecewiseConstant& u0, double lo, double hi) {
    // A cell inside one piece keeps the piece value bit for bit.
    const auto a = std::upper_bound(u0.breakpoints.begin(), u0.breakpoints.end(), lo);
    const auto b = std::lower_bound(u0.breakpoints.begin(), u0.breakpoints.end(), hi);
    if (a >= b) return u0.values[static_cast<std::size_t>(a - u0.breakpoints.begin())];
    return u0.integral(lo, hi) / (hi - lo);
}

std::ptrdiff_t cell_of(double x, double h0, double dx) {
    return static_cast<std::ptrdiff_t>(std::floor((x - h0) / dx)) + 1;
}

FluidGrid make_grid(const PiecewiseConstant& u0, double h0, double dx, std::ptrdiff_t j_lo,
                    std::ptrdiff_t j_hi) {
    FluidGrid grid;
    grid.dx = dx;
    grid.j_min = j_lo;
    grid.left_edge = h0 + static_cast<double>(j_lo - 1) * dx;
    grid.cells.resize(static_cast<std::size_t>(j_hi - j_lo + 1));
    for (std::ptrdiff_t j = j_lo; j <= j_hi; ++j) {
        const double lo = h0 + static_cast<double>(j - 1) * dx;
        const double hi = h0 + static_cast<double>(j) * dx;
        grid.at(j) = cell_average(u0, lo, hi);
    }
    return grid;
}

double lipschitz_of(const SchemeConfig& cfg, const BoundsEnvelope& env) {
    return lipschitz_bound(cfg.bulk, cfg.iface, env.m, env.M, env.v_lo, env.v_hi, cfg.germ).L;
}

std::pair<FluidGrid, ParticleState> init_with_margin(const PiecewiseConstant& u0, double h0,
                                                     double v0, const SchemeConfig& cfg,
                                                     double dx, std::size_t extra_steps) {
    cfg.validate();
    u0.validate();
    if (!(dx > 0.0) || !std::isfinite(dx)) throw std::invalid_argument("dx must be > 0");
    if (!std::isfinite(h0) || !std::isfinite(v0))
        throw std::invalid_argument("h0 and v0 must be finite");

    const BoundsEnvelope env = bounds_envelope(u0, v0, cfg.germ, h0);
    const double dt = compute_dt(lipschitz_of(cfg, env), dx, cfg);
    const ParticleState particle{h0, v0, cfg.m_p};

    if (cfg.domain == DomainKind::Periodic) {
        const double a = *cfg.half_width;
        const double mu_run = dt / dx;
        if (a < 3.0 * cfg.T / mu_run) {
            throw DisturbanceError("periodic half-width " + std::to_string(a) +
                                   " below 3T/mu = " + std::to_string(3.0 * cfg.T / mu_run));
        }
        double ratio = a / dx;
        const double near = std::round(ratio);
        if (std::abs(ratio - near) <= 1e-9 * near) ratio = near;
        const auto mc = static_cast<std::ptrdiff_t>(std::ceil(ratio));
        FluidGrid grid = make_grid(u0, h0, dx, -mc + 1, mc);
        grid.validate();
        return {std::move(grid), particle};
    }

    const auto steps = static_cast<std::ptrdiff_t>(std::ceil(cfg.T / dt)) +
                       static_cast<std::ptrdiff_t>(extra_steps) + 1;
    std::ptrdiff_t j_lo = 0, j_hi = 1;
    if (!u0.breakpoints.empty()) {
        j_lo = std::min(j_lo, cell_of(u0.breakpoints.front(), h0, dx));
        j_hi = std::max(j_hi, cell_of(u0.breakpoints.back(), h0, dx));
    }
    j_lo -= steps + kPadMargin + kGuardCells;
    j_hi += steps + kPadMargin + kGuardCells;
    if (cfg.half_width) {
        const auto w = static_cast<std::ptrdiff_t>(std::ceil(*cfg.half_width / dx));
        j_lo = std::min(j_lo, -w + 1);
        j_hi = std::max(j_hi, w);
    }
    FluidGrid grid = make_grid(u0, h0, dx, j_lo, j_hi);
    grid.validate();
    return {std::move(grid), particle};
}

struct FluidUpdate {
    std::vector<double> cells;
    InterfaceFluxes iface;
    double outflow = 0.0;
};

// Conservative update of every cell with fluxes evaluated at speed w.
FluidUpdate fluid_update(const FluidGrid& grid, const SchemeConfig& cfg, double dt, double w) {
    const std::vector<double>& u = grid.cells;
    const std::size_t n = u.size();
    const std::size_t i0 = grid.index(0);
    const std::size_t i1 = i0 + 1;

    FluidUpdate out;
    out.iface = interface_fluxes(cfg.iface, cfg.bulk, u[i0], u[i1], w, cfg.germ);

    // faces[k] sits between cells k-1 and k
    std::vector<double> faces(n + 1);
    for (std::size_t k = 1; k < n; ++k) {
        if (k == i1) continue;
        faces[k] = bulk_flux(cfg.bulk, u[k - 1], u[k], w);
    }
    if (cfg.domain == DomainKind::Periodic) {
        faces[0] = faces[n] = bulk_flux(cfg.bulk, u[n - 1], u[0], w);
    } else {
        faces[0] = moving_flux(u[0], w);
        faces[n] = moving_flux(u[n - 1], w);
        out.outflow = dt * (faces[n] - faces[0]);
    }

    const double ratio = dt / grid.dx;
    out.cells.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double right = k == i0 ? out.iface.g_minus : faces[k + 1];
        const double left = k == i1 ? out.iface.g_plus : faces[k];
        out.cells[k] = u[k] - ratio * (right - left);
    }

    if (cfg.domain == DomainKind::Padded) {
        for (int k = 0; k < kGuardCells; ++k) {
            const std::size_t a = static_cast<std::size_t>(k), b = n - 1 - a;
            if (out.cells[a] != u[a] || out.cells[b] != u[b])
                throw DisturbanceError("disturbance reached the padded boundary");
        }
    }
    return out;
}

double drag(const FluidGrid& grid, const SchemeConfig& cfg, double w) {
    const InterfaceFluxes f =
        interface_fluxes(cfg.iface, cfg.bulk, grid.at(0), grid.at(1), w, cfg.germ);
    return f.g_minus - f.g_plus;
}

StepResult finish(const FluidGrid& grid, const ParticleState& particle, FluidUpdate&& upd,
                  double v_next, double dt) {
    StepResult r;
    r.grid = grid;
    r.grid.cells = std::move(upd.cells);
    r.grid.left_edge += particle.v * dt;
    r.particle = particle;
    r.particle.h += particle.v * dt;
    r.particle.v = v_next;
    r.outflow = upd.outflow;
    return r;
}

}  // namespace

std::pair<FluidGrid, ParticleState> init_state(const PiecewiseConstant& u0, double h0, double v0,
                                               const SchemeConfig& cfg, double dx) {
    return init_with_margin(u0, h0, v0, cfg, dx, 0);
}

double compute_dt(double L, double dx, const SchemeConfig& cfg) {
    if (!std::isfinite(L) || L < 0.0) throw std::invalid_argument("Lipschitz bound must be finite");
    if (!(dx > 0.0)) throw std::invalid_argument("dx must be > 0");
    const bool explicit_v = cfg.velocity_update == VelocityUpdate::Explicit;
    if (cfg.dt_override) {
        const double dt = *cfg.dt_override;
        constexpr double slack = 1.0 + 1e-12;
        if (L * dt / dx > 0.5 * slack)
            throw std::invalid_argument("dt override violates the CFL condition L*dt/dx <= 1/2");
        if (explicit_v && 4.0 * L * dt / cfg.m_p > slack)
            throw std::invalid_argument("dt override violates the mass condition 4*L*dt/m_p <= 1");
        return dt;
    }
    const double mu = L > 0.0 ? std::min(cfg.mu, 0.5 / L) : cfg.mu;
    double dt = mu * dx;
    if (explicit_v && L > 0.0) dt = std::min(dt, cfg.m_p / (4.0 * L));
    return dt;
}

double compute_dt(const FluidGrid& grid, const ParticleState& particle, const SchemeConfig& cfg,
                  const BoundsEnvelope& env) {
    if (!(env.m <= env.M) || !(env.v_lo <= env.v_hi)) throw std::invalid_argument("invalid envelope");
    SchemeConfig c = cfg;
    c.m_p = particle.m_p;
    return compute_dt(lipschitz_of(c, env), grid.dx, c);
}

StepResult step(const FluidGrid& grid, const ParticleState& particle, const SchemeConfig& cfg,
                double dt) {
    FluidUpdate upd = fluid_update(grid, cfg, dt, particle.v);
    const double v_next =
        particle.v + (dt / particle.m_p) * (upd.iface.g_minus - upd.iface.g_plus);
    return finish(grid, particle, std::move(upd), v_next, dt);
}

double solve_implicit_velocity(double u0, double u1, double v, double dt, const SchemeConfig& cfg) {
    FluidGrid pair;
    pair.cells = {u0, u1};
    pair.j_min = 0;
    pair.dx = 1.0;
    const double k = dt / cfg.m_p;
    auto residual = [&](double w) { return w - v - k * drag(pair, cfg, w); };

    if (residual(v) == 0.0) return v;
    const double lam = cfg.germ.lambda;
    double lo = std::min({v, u0, u1}) - lam;
    double hi = std::max({v, u0, u1}) + lam;
    double r_lo = residual(lo), r_hi = residual(hi);
    for (int widen = 0; widen < 8 && !(r_lo <= 0.0 && r_hi >= 0.0); ++widen) {
        lo -= lam;
        hi += lam;
        r_lo = residual(lo);
        r_hi = residual(hi);
    }
    if (!(r_lo <= 0.0 && r_hi >= 0.0))
        throw ConvergenceError("implicit velocity: no sign change in bracket");

    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= 1e-12 || mid == lo || mid == hi) return mid;
        const double r = residual(mid);
        if (r == 0.0) return mid;
        (r < 0.0 ? lo : hi) = mid;
    }
    throw ConvergenceError("implicit velocity: bisection did not converge in 200 iterations");
}

StepResult step_implicit(const FluidGrid& grid, const ParticleState& particle,
                         const SchemeConfig& cfg, double dt) {
    SchemeConfig c = cfg;
    c.m_p = particle.m_p;
    const double w = solve_implicit_velocity(grid.at(0), grid.at(1), particle.v, dt, c);
    FluidUpdate upd = fluid_update(grid, cfg, dt, w);
    return finish(grid, particle, std::move(upd), w, dt);
}

namespace {

DiagnosticsRecord record(double t, const FluidGrid& grid, const ParticleState& p,
                         const SchemeConfig& cfg, double accel, double outflow) {
    DiagnosticsRecord r;
    r.t = t;
    r.momentum = total_momentum(grid, p);
    r.tv = total_variation(grid, cfg.domain);
    const auto [lo, hi] = std::minmax_element(grid.cells.begin(), grid.cells.end());
    r.u_min = *lo;
    r.u_max = *hi;
    r.v = p.v;
    r.accel = accel;
    r.trace_germ_dist = dist1_to_H({grid.at(0), grid.at(1)}, p.v, cfg.germ);
    r.boundary_outflow = outflow;
    return r;
}

}  // namespace

Trajectory run(const PiecewiseConstant& u0, double h0, double v0, const SchemeConfig& cfg,
               double dx, const RunOptions& opts) {
    cfg.validate();
    std::vector<double> marks;
    for (double s : opts.snapshot_times) {
        if (!std::isfinite(s) || s < 0.0 || s > cfg.T)
            throw std::invalid_argument("snapshot time outside [0, T]");
        if (s > 0.0 && s < cfg.T) marks.push_back(s);
    }
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
    marks.push_back(cfg.T);

    auto [grid, particle] = init_with_margin(u0, h0, v0, cfg, dx, marks.size());
    const BoundsEnvelope env = bounds_envelope(u0, v0, cfg.germ, h0);
    const double dt = compute_dt(grid, particle, cfg, env);

    Trajectory traj;
    traj.m_p = cfg.m_p;
    traj.domain = cfg.domain;
    double t = 0.0;
    double outflow = 0.0;
    traj.times.push_back(t);
    traj.particle_path.emplace_back(particle.h, particle.v);
    traj.diagnostics_log.push_back(record(t, grid, particle, cfg, 0.0, outflow));
    traj.snapshots.emplace_back(t, grid);

    std::size_t next_mark = 0;
    while (next_mark < marks.size() && t < cfg.T) {
        const double target = marks[next_mark];
        double t_next = t + dt;
        bool landed = false;
        if (t_next >= target - 1e-12 * dt) {
            t_next = target;
            landed = true;
        }
        const double dt_n = t_next - t;
        StepResult r = cfg.velocity_update == VelocityUpdate::Explicit
                           ? step(grid, particle, cfg, dt_n)
                           : step_implicit(grid, particle, cfg, dt_n);
        const double accel = std::abs(r.particle.v - particle.v) / dt_n;
        outflow += r.outflow;
        grid = std::move(r.grid);
        particle = r.particle;
        t = t_next;

        traj.times.push_back(t);
        traj.particle_path.emplace_back(particle.h, particle.v);
        traj.diagnostics_log.push_back(record(t, grid, particle, cfg, accel, outflow));
        if (landed || opts.store_all_steps) traj.snapshots.emplace_back(t, grid);
        if (landed) ++next_mark;
    }
    return traj;
}

namespace {

std::size_t step_index(const Trajectory& traj, double t) {
    if (traj.times.empty()) throw std::out_of_range("empty trajectory");
    if (!(t >= traj.times.front()) || !(t <= traj.times.back()))
        throw std::out_of_range("sample time outside trajectory");
    const auto it = std::upper_bound(traj.times.begin(), traj.times.end(), t);
    const auto n = static_cast<std::size_t>(it - traj.times.begin()) - 1;
    return std::min(n, traj.times.size() - 1);
}

}  // namespace

double sample_h(const Trajectory& traj, double t) {
    const std::size_t n = step_index(traj, t);
    const auto [h, v] = traj.particle_path[n];
    return h + v * (t - traj.times[n]);
}

double sample_v(const Trajectory& traj, double t) {
    return traj.particle_path[step_index(traj, t)].second;
}

SolutionSample sample_solution(const Trajectory& traj, double t, double x) {
    const std::size_t n = step_index(traj, t);
    const double tn = traj.times[n];
    const auto snap = std::find_if(traj.snapshots.begin(), traj.snapshots.end(),
                                   [tn](const auto& s) { return s.first == tn; });
    if (snap == traj.snapshots.end()) throw std::out_of_range("no snapshot stored for this step");
    const FluidGrid& grid = snap->second;
    const double v = traj.particle_path[n].second;
    const double shift = v * (t - tn);
    const double rel = (x - (grid.left_edge + shift)) / grid.dx;
    if (!(rel >= 0.0) || !(rel < static_cast<double>(grid.cells.size())))
        throw std::out_of_range("sample position outside stored grid");
    const auto k = static_cast<std::size_t>(std::floor(rel));
    return {grid.cells[k], traj.particle_path[n].first + shift, v};
}

}  // namespace pbfv
