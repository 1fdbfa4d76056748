#include "pbfv/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <stdexcept>

namespace pbfv {

BoundsEnvelope bounds_envelope(const PiecewiseConstant& u0, double v0, const GermParams& g,
                               double h0) {
    u0.validate();
    BoundsEnvelope e;
    e.m = std::min(u0.inf_left(h0) - g.lambda, u0.inf_right(h0));
    e.M = std::max(u0.sup_left(h0), u0.sup_right(h0) + g.lambda);
    e.v_lo = std::min(e.m, v0);
    e.v_hi = std::max(e.M, v0);
    return e;
}

namespace {

// Neumaier compensated sum.
struct CompensatedSum {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace

double total_momentum(const FluidGrid& grid, const ParticleState& particle) {
    CompensatedSum cells;
    for (double u : grid.cells) cells.add(u);
    CompensatedSum total;
    total.add(particle.m_p * particle.v);
    total.add(grid.dx * cells.sum);
    total.add(grid.dx * cells.comp);
    return total.value();
}

double total_variation(const FluidGrid& grid, DomainKind domain) {
    const auto& u = grid.cells;
    double tv = 0.0;
    for (std::size_t k = 1; k < u.size(); ++k) tv += std::abs(u[k] - u[k - 1]);
    if (domain == DomainKind::Periodic && !u.empty()) tv += std::abs(u.front() - u.back());
    return tv;
}

std::vector<double> entropy_residual(const FluidGrid& prev_grid, const ParticleState& prev,
                                     const FluidGrid& next_grid, const ParticleState& /*next*/,
                                     const SchemeConfig& cfg, double dt, GermPoint c) {
    if (prev_grid.cells.size() != next_grid.cells.size() || prev_grid.j_min != next_grid.j_min ||
        prev_grid.dx != next_grid.dx)
        throw std::invalid_argument("entropy_residual: grids do not match");
    if (!(dt > 0.0)) throw std::invalid_argument("entropy_residual: dt must be > 0");

    const auto& u = prev_grid.cells;
    const auto& un = next_grid.cells;
    const std::size_t n = u.size();
    const std::size_t i0 = prev_grid.index(0), i1 = i0 + 1;
    const double v = prev.v, dx = prev_grid.dx;
    const GermParams& g = cfg.germ;

    auto bulk_entropy = [&](double a, double b, double k) {
        return bulk_flux(cfg.bulk, std::max(a, k), std::max(b, k), v) -
               bulk_flux(cfg.bulk, std::min(a, k), std::min(b, k), v);
    };
    const InterfaceFluxes top = interface_fluxes(cfg.iface, cfg.bulk, std::max(u[i0], c.u_minus),
                                                 std::max(u[i1], c.u_plus), v, g);
    const InterfaceFluxes bot = interface_fluxes(cfg.iface, cfg.bulk, std::min(u[i0], c.u_minus),
                                                 std::min(u[i1], c.u_plus), v, g);
    const double G_minus = top.g_minus - bot.g_minus;
    const double G_plus = top.g_plus - bot.g_plus;

    double lo = std::min(c.u_minus, c.u_plus), hi = std::max(c.u_minus, c.u_plus);
    for (double x : u) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    const double L_c = lipschitz_bound(cfg.bulk, cfg.iface, lo, hi, v, v, g).L;
    const double A = 2.0 * L_c + 2.0 * dx / dt;
    const double dist = dist1_to_H(c, v, g);
    const bool periodic = cfg.domain == DomainKind::Periodic;

    std::vector<double> res(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double kappa = k <= i0 ? c.u_minus : c.u_plus;
        double left, right;
        if (k == i1) {
            left = G_plus;
        } else if (k == 0) {
            left = periodic ? bulk_entropy(u[n - 1], u[0], kappa)
                            : kruzhkov_flux(u[0], kappa, v);
        } else {
            left = bulk_entropy(u[k - 1], u[k], kappa);
        }
        if (k == i0) {
            right = G_minus;
        } else if (k == n - 1) {
            right = periodic ? bulk_entropy(u[n - 1], u[0], kappa)
                             : kruzhkov_flux(u[n - 1], kappa, v);
        } else {
            right = bulk_entropy(u[k], u[k + 1], kappa);
        }
        res[k] = (std::abs(un[k] - kappa) - std::abs(u[k] - kappa)) / dt + (right - left) / dx;
        if (k == i0 || k == i1) res[k] -= A / dx * dist;
    }
    return res;
}

BoundsReport check_bounds(const Trajectory& traj, const PiecewiseConstant& u0, double h0,
                          double v0, const SchemeConfig& cfg) {
    const BoundsEnvelope env = bounds_envelope(u0, v0, cfg.germ, h0);
    const double L = lipschitz_bound(cfg.bulk, cfg.iface, env.m, env.M, env.v_lo, env.v_hi, cfg.germ).L;
    double u_inf = 0.0;
    for (double u : u0.values) u_inf = std::max(u_inf, std::abs(u));
    double v_inf = 0.0;
    for (const auto& r : traj.diagnostics_log) v_inf = std::max(v_inf, std::abs(r.v));
    const double acc_cap = 2.0 * L / cfg.m_p * (u_inf + cfg.germ.lambda + v_inf);

    BoundsReport rep;
    const auto& log = traj.diagnostics_log;
    rep.steps = log.empty() ? 0 : log.size() - 1;
    rep.momentum = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < log.size(); ++n) {
        const DiagnosticsRecord& r = log[n];
        rep.linf = std::max({rep.linf, env.m - r.u_min, r.u_max - env.M});
        rep.tv = std::max(rep.tv, r.tv - (log.front().tv + 2.0 * cfg.germ.lambda));
        rep.velocity = std::max({rep.velocity, env.v_lo - r.v, r.v - env.v_hi});
        rep.accel = std::max(rep.accel, r.accel - acc_cap);
        const double drift = std::abs(r.momentum + r.boundary_outflow - log.front().momentum);
        rep.max_momentum_drift = std::max(rep.max_momentum_drift, drift);
        rep.momentum = std::max(rep.momentum, drift - 1e-12 * (1.0 + static_cast<double>(n)));
    }
    return rep;
}

DissipativityReport dissipativity_probe(const std::function<double(double, double)>& drag,
                                        StateBox box, int n) {
    if (n < 2) throw std::invalid_argument("dissipativity_probe: n must be >= 2");
    const auto N = static_cast<std::size_t>(n);
    std::vector<double> axis(N), D(N * N);
    for (std::size_t i = 0; i < N; ++i)
        axis[i] = box.lo + (box.hi - box.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) D[i * N + j] = drag(axis[i], axis[j]);

    DissipativityReport r;
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
            if (i + 1 < N) r.worst_first = std::min(r.worst_first, D[(i + 1) * N + j] - D[i * N + j]);
            if (j + 1 < N) r.worst_second = std::min(r.worst_second, D[i * N + j + 1] - D[i * N + j]);
        }
    }
    return r;
}

DissipativityReport dissipativity_probe(InterfaceFluxKind iface, BulkFluxKind bulk,
                                        const GermParams& g, StateBox box, double v, int n) {
    return dissipativity_probe(
        [&](double a, double b) {
            const InterfaceFluxes f = interface_fluxes(iface, bulk, a, b, v, g);
            return f.g_minus - f.g_plus;
        },
        box, n);
}

std::vector<GermPoint> sample_H(const GermParams& g, double v, int n_h, std::uint64_t seed) {
    if (n_h < 100) throw std::invalid_argument("sample_H: need at least 100 points");
    const double lam = g.lambda;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // Extremal pairs for the entropy criterion sit on the edges q- = v, q+ = v and on the line.
    std::vector<GermPoint> pts{{v, v}, {v + lam, v}, {v, v - lam}};
    const int edge = static_cast<int>(0.35 * n_h);
    const int line = n_h - 3 - 2 * edge;
    for (int i = 0; i < edge; ++i)
        pts.push_back({v + lam * (i + unit(rng)) / edge, v});
    for (int i = 0; i < edge; ++i)
        pts.push_back({v, v - lam * (i + unit(rng)) / edge});
    for (int i = 0; i < line; ++i) {
        const double up = v - 4.0 * lam + 8.0 * lam * (i + unit(rng)) / line;
        pts.push_back({up + lam, up});
    }
    return pts;
}

namespace {

std::vector<GermPoint> kink_points(const GermPoint& p, double v, const GermParams& g) {
    const double lam = g.lambda;
    const double qm = std::clamp(p.u_minus, v, v + lam), qp = std::clamp(p.u_plus, v - lam, v);
    std::vector<GermPoint> out{{v, qp}, {qm, v}, {p.u_plus + lam, p.u_plus}, {p.u_minus, p.u_minus - lam}};
    if (qm - qp <= lam) out.push_back({qm, qp});
    return out;
}

}  // namespace

std::vector<MaximalityVerdict> maximality_probe(const GermParams& g, double v, int n_h,
                                                const std::vector<GermPoint>& candidates,
                                                std::uint64_t seed, double band) {
    const std::vector<GermPoint> H = sample_H(g, v, n_h, seed);
    std::vector<MaximalityVerdict> out;
    out.reserve(candidates.size());
    for (const GermPoint& p : candidates) {
        MaximalityVerdict r;
        r.p = p;
        r.region = classify(p, v, g);
        r.worst_xi = std::numeric_limits<double>::infinity();
        for (const GermPoint& q : H) r.worst_xi = std::min(r.worst_xi, xi(p, q, v));
        // Xi(p, .) has kinks at q- = p- and q+ = p+; a fixed sample misses them by its spacing
        // while the deficit of a nearby outside point is only quadratic in its distance.
        for (const GermPoint& q : kink_points(p, v, g)) r.worst_xi = std::min(r.worst_xi, xi(p, q, v));
        r.passes = r.worst_xi >= -kNumTol;
        const bool near = in_germ_inflated(p, v, g, band);
        r.in_band = r.region == GermRegion::Outside && near;
        r.contradiction = r.passes && !near;
        out.push_back(r);
    }
    return out;
}

namespace {

void check_levels(const std::vector<double>& levels) {
    if (levels.size() < 3) throw std::invalid_argument("convergence_study: need >= 3 levels");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!(levels[i] > 0.0)) throw std::invalid_argument("convergence_study: dx must be > 0");
        if (i > 0 && !(levels[i] < levels[i - 1]))
            throw std::invalid_argument("convergence_study: levels must strictly decrease");
    }
}

double momentum_drift(const Trajectory& traj) {
    const auto& log = traj.diagnostics_log;
    double worst = 0.0;
    for (const auto& r : log)
        worst = std::max(worst, std::abs(r.momentum + r.boundary_outflow - log.front().momentum));
    return worst;
}

const FluidGrid& final_grid(const Trajectory& traj) { return traj.snapshots.back().second; }

std::vector<Trajectory> run_levels(const PiecewiseConstant& u0, double h0, double v0,
                                   const SchemeConfig& cfg, const std::vector<double>& levels) {
    std::vector<std::future<Trajectory>> jobs;
    jobs.reserve(levels.size());
    for (double dx : levels)
        jobs.push_back(std::async(std::launch::async,
                                  [&u0, h0, v0, &cfg, dx] { return run(u0, h0, v0, cfg, dx); }));
    std::vector<Trajectory> out;
    out.reserve(levels.size());
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

void fill_orders(std::vector<ConvergenceRow>& rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == 0) {
            rows[i].order_u = rows[i].order_h = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        const double r = std::log(rows[i - 1].dx / rows[i].dx);
        rows[i].order_u = std::log(rows[i - 1].err_u_L1 / rows[i].err_u_L1) / r;
        rows[i].order_h = std::log(rows[i - 1].err_h_sup / rows[i].err_h_sup) / r;
    }
}

// L1 distance between two piecewise-constant grids over their common window.
double l1_between(const FluidGrid& a, const FluidGrid& b) {
    const double lo = std::max(a.left_edge, b.left_edge);
    const double hi = std::min(a.right_edge(), b.right_edge());
    std::vector<double> cuts{lo, hi};
    for (const FluidGrid* g : {&a, &b})
        for (std::ptrdiff_t j = g->j_min; j <= g->j_max() + 1; ++j) {
            const double x = g->face(j);
            if (x > lo && x < hi) cuts.push_back(x);
        }
    std::sort(cuts.begin(), cuts.end());
    auto value = [](const FluidGrid& g, double x) {
        const auto k = static_cast<std::ptrdiff_t>(std::floor((x - g.left_edge) / g.dx));
        const auto idx = std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(g.cells.size()) - 1);
        return g.cells[static_cast<std::size_t>(idx)];
    };
    double err = 0.0;
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        const double w = cuts[i] - cuts[i - 1];
        if (w <= 0.0) continue;
        const double mid = 0.5 * (cuts[i] + cuts[i - 1]);
        err += std::abs(value(a, mid) - value(b, mid)) * w;
    }
    return err;
}

}  // namespace

std::vector<ConvergenceRow> convergence_study(const Germ2RiemannProblem& problem,
                                              const SchemeConfig& cfg,
                                              const std::vector<double>& levels) {
    problem.validate();
    check_levels(levels);
    SchemeConfig c = cfg;
    c.m_p = problem.m_p;
    c.germ = GermParams(problem.lambda);
    const PiecewiseConstant u0 = problem.datum();
    const std::vector<Trajectory> trajs = run_levels(u0, 0.0, problem.v0, c, levels);

    const ExactSolution at_T = germ2_exact(problem, c.T);
    std::vector<ConvergenceRow> rows;
    for (std::size_t l = 0; l < levels.size(); ++l) {
        const Trajectory& tr = trajs[l];
        ConvergenceRow row;
        row.dx = levels[l];
        row.steps = tr.times.size() - 1;
        row.max_momentum_drift = momentum_drift(tr);

        const FluidGrid& grid = final_grid(tr);
        for (std::ptrdiff_t j = grid.j_min; j <= grid.j_max(); ++j) {
            const double a = grid.face(j), b = grid.face(j + 1), u = grid.at(j);
            const double cut = std::clamp(at_T.h, a, b);
            row.err_u_L1 += std::abs(u - problem.u_minus) * (cut - a) +
                            std::abs(u - problem.u_plus) * (b - cut);
        }

        for (std::size_t n = 0; n + 1 < tr.times.size(); ++n) {
            const double t0 = tr.times[n], t1 = tr.times[n + 1];
            const double v = tr.particle_path[n].second;
            for (double s : {0.0, 0.25, 0.5, 0.75}) {
                const double t = t0 + s * (t1 - t0);
                const double h = tr.particle_path[n].first + v * (t - t0);
                row.err_h_sup = std::max(row.err_h_sup, std::abs(h - germ2_track(problem, t).h));
            }
            row.err_v_sup = std::max({row.err_v_sup, std::abs(v - germ2_track(problem, t0).hprime),
                                      std::abs(v - germ2_track(problem, t1).hprime)});
        }
        const double tT = tr.times.back();
        row.err_h_sup =
            std::max(row.err_h_sup, std::abs(tr.particle_path.back().first - germ2_track(problem, tT).h));
        rows.push_back(row);
    }
    fill_orders(rows);
    return rows;
}

std::vector<ConvergenceRow> convergence_study(const PiecewiseConstant& u0, double h0, double v0,
                                              const SchemeConfig& cfg,
                                              const std::vector<double>& levels,
                                              double reference_dx) {
    check_levels(levels);
    if (!(reference_dx > 0.0 && reference_dx < levels.back()))
        throw std::invalid_argument("convergence_study: reference must be finer than every level");
    std::vector<double> all = levels;
    all.push_back(reference_dx);
    const std::vector<Trajectory> trajs = run_levels(u0, h0, v0, cfg, all);
    const Trajectory& ref = trajs.back();

    std::vector<ConvergenceRow> rows;
    for (std::size_t l = 0; l < levels.size(); ++l) {
        const Trajectory& tr = trajs[l];
        ConvergenceRow row;
        row.dx = levels[l];
        row.steps = tr.times.size() - 1;
        row.max_momentum_drift = momentum_drift(tr);
        row.err_u_L1 = l1_between(final_grid(tr), final_grid(ref));
        // Piecewise-linear h and piecewise-constant v: extremes sit on the merged nodes.
        std::vector<double> nodes = tr.times;
        nodes.insert(nodes.end(), ref.times.begin(), ref.times.end());
        std::sort(nodes.begin(), nodes.end());
        for (double t : nodes) {
            row.err_h_sup = std::max(row.err_h_sup, std::abs(sample_h(tr, t) - sample_h(ref, t)));
            row.err_v_sup = std::max(row.err_v_sup, std::abs(sample_v(tr, t) - sample_v(ref, t)));
        }
        rows.push_back(row);
    }
    fill_orders(rows);
    return rows;
}

}  // namespace pbfv
