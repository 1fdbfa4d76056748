#pragma once

#include <cstddef>
#include <vector>

namespace pbfv {

// Piecewise-constant function on the real line. values[i] holds on
// [breakpoints[i-1], breakpoints[i]) with the outer pieces unbounded.
struct PiecewiseConstant {
    std::vector<double> breakpoints;
    std::vector<double> values;

    static PiecewiseConstant constant(double c);
    static PiecewiseConstant riemann(double left, double right, double x0 = 0.0);

    void validate() const;  // throws std::invalid_argument
    double operator()(double x) const;
    double integral(double lo, double hi) const;
    // inf/sup over the open half-lines left and right of x0
    double inf_left(double x0) const;
    double sup_left(double x0) const;
    double inf_right(double x0) const;
    double sup_right(double x0) const;
};

struct ParticleState {
    double h = 0.0;
    double v = 0.0;
    double m_p = 1.0;
};

// Uniform mesh attached to the particle: the particle sits on the face between
// cell 0 and cell 1. Cell j covers [left_edge + (j - j_min) dx, left_edge + (j - j_min + 1) dx).
struct FluidGrid {
    std::vector<double> cells;
    std::ptrdiff_t j_min = 0;
    double dx = 0.0;
    double left_edge = 0.0;

    std::ptrdiff_t j_max() const { return j_min + static_cast<std::ptrdiff_t>(cells.size()) - 1; }
    std::size_t index(std::ptrdiff_t j) const { return static_cast<std::size_t>(j - j_min); }
    double at(std::ptrdiff_t j) const { return cells[index(j)]; }
    double& at(std::ptrdiff_t j) { return cells[index(j)]; }
    double face(std::ptrdiff_t j) const {  // x_{j-1/2}
        return left_edge + static_cast<double>(j - j_min) * dx;
    }
    double right_edge() const { return face(j_max() + 1); }
    void validate() const;
};

struct BoundsEnvelope {
    double m = 0.0;
    double M = 0.0;
    double v_lo = 0.0;
    double v_hi = 0.0;
};

struct DiagnosticsRecord {
    double t = 0.0;
    double momentum = 0.0;
    double tv = 0.0;
    double u_min = 0.0;
    double u_max = 0.0;
    double v = 0.0;
    double accel = 0.0;
    double trace_germ_dist = 0.0;
    // cumulative dt * (right boundary flux - left boundary flux); zero on periodic meshes
    double boundary_outflow = 0.0;
};

}  // namespace pbfv
