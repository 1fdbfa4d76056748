#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pbfv/exact.hpp"
#include "pbfv/scheme.hpp"

namespace pbfv {

BoundsEnvelope bounds_envelope(const PiecewiseConstant& u0, double v0, const GermParams& g,
                               double h0 = 0.0);

double total_momentum(const FluidGrid& grid, const ParticleState& particle);
double total_variation(const FluidGrid& grid, DomainKind domain = DomainKind::Padded);

// Per-cell defect of the discrete entropy inequality, indexed like grid.cells.
std::vector<double> entropy_residual(const FluidGrid& prev_grid, const ParticleState& prev,
                                     const FluidGrid& next_grid, const ParticleState& next,
                                     const SchemeConfig& cfg, double dt, GermPoint c);

// Worst excess over each a priori bound along a run (0 when respected).
struct BoundsReport {
    double linf = 0.0;      // u outside [m, M]
    double tv = 0.0;        // TV above TV(u^0) + 2 lambda
    double velocity = 0.0;  // v outside [v_lo, v_hi]
    double accel = 0.0;     // |dv/dt| above (2L/m_p)(|u0|_inf + lambda + |v|_inf)
    double momentum = 0.0;  // drift above 1e-12 (1 + n)
    double max_momentum_drift = 0.0;
    std::size_t steps = 0;
    bool ok(double tol = kNumTol) const {
        return linf <= tol && tv <= tol && velocity <= tol && accel <= tol && momentum <= 0.0;
    }
};

BoundsReport check_bounds(const Trajectory& traj, const PiecewiseConstant& u0, double h0,
                          double v0, const SchemeConfig& cfg);

struct StateBox {
    double lo = -2.0;
    double hi = 2.0;
};

struct DissipativityReport {
    double worst_first = 0.0;   // most negative forward difference along a (0 if none)
    double worst_second = 0.0;  // same along b
    double worst() const { return worst_first < worst_second ? worst_first : worst_second; }
};

DissipativityReport dissipativity_probe(const std::function<double(double, double)>& drag,
                                        StateBox box, int n);
DissipativityReport dissipativity_probe(InterfaceFluxKind iface, BulkFluxKind bulk,
                                        const GermParams& g, StateBox box, double v, int n);

struct MaximalityVerdict {
    GermPoint p;
    GermRegion region = GermRegion::Outside;
    bool passes = false;         // xi(p, q) >= -tol for every sampled q
    double worst_xi = 0.0;
    bool in_band = false;        // outside the germ but within the excluded band
    bool contradiction = false;  // passes while clearly outside the germ
};

// Sample of the line and the subsonic box: the two inner edges of the box
// plus the line over [v - 4 lambda, v + 4 lambda], jittered by `seed`.
std::vector<GermPoint> sample_H(const GermParams& g, double v, int n_h, std::uint64_t seed);

std::vector<MaximalityVerdict> maximality_probe(const GermParams& g, double v, int n_h,
                                                const std::vector<GermPoint>& candidates,
                                                std::uint64_t seed, double band = 1e-6);

struct ConvergenceRow {
    double dx = 0.0;
    double err_u_L1 = 0.0;
    double err_h_sup = 0.0;
    double err_v_sup = 0.0;
    double order_u = 0.0;  // NaN on the first row
    double order_h = 0.0;
    std::size_t steps = 0;
    double max_momentum_drift = 0.0;  // |momentum + outflow - initial| over the run
};

// Errors against the closed-form solution.
std::vector<ConvergenceRow> convergence_study(const Germ2RiemannProblem& problem,
                                              const SchemeConfig& cfg,
                                              const std::vector<double>& levels);
// Errors against a run at reference_dx (finer than every level).
std::vector<ConvergenceRow> convergence_study(const PiecewiseConstant& u0, double h0, double v0,
                                              const SchemeConfig& cfg,
                                              const std::vector<double>& levels,
                                              double reference_dx);

}  // namespace pbfv
