#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pbfv/state.hpp"

namespace pbfv {

PiecewiseConstant PiecewiseConstant::constant(double c) { return {{}, {c}}; }

PiecewiseConstant PiecewiseConstant::riemann(double left, double right, double x0) {
    return {{x0}, {left, right}};
}

void PiecewiseConstant::validate() const {
    if (values.size() != breakpoints.size() + 1)
        throw std::invalid_argument("piecewise datum needs one more value than breakpoints");
    for (double b : breakpoints)
        if (!std::isfinite(b)) throw std::invalid_argument("non-finite breakpoint");
    for (double u : values)
        if (!std::isfinite(u)) throw std::invalid_argument("non-finite datum value");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i - 1] < breakpoints[i]))
            throw std::invalid_argument("breakpoints must be strictly increasing");
}

double PiecewiseConstant::operator()(double x) const {
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
    return values[static_cast<std::size_t>(it - breakpoints.begin())];
}

double PiecewiseConstant::integral(double lo, double hi) const {
    if (!(lo < hi)) return 0.0;
    double acc = 0.0;
    double left = lo;
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), lo);
    std::size_t i = static_cast<std::size_t>(it - breakpoints.begin());
    while (left < hi) {
        const double right = i < breakpoints.size() ? std::min(hi, breakpoints[i]) : hi;
        acc += values[i] * (right - left);
        left = right;
        ++i;
    }
    return acc;
}

double PiecewiseConstant::inf_left(double x0) const {
    double r = values[0];
    for (std::size_t i = 1; i < values.size() && breakpoints[i - 1] < x0; ++i) r = std::min(r, values[i]);
    return r;
}

double PiecewiseConstant::sup_left(double x0) const {
    double r = values[0];
    for (std::size_t i = 1; i < values.size() && breakpoints[i - 1] < x0; ++i) r = std::max(r, values[i]);
    return r;
}

double PiecewiseConstant::inf_right(double x0) const {
    double r = values.back();
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        if (breakpoints[i] > x0) r = std::min(r, values[i]);
    return r;
}

double PiecewiseConstant::sup_right(double x0) const {
    double r = values.back();
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        if (breakpoints[i] > x0) r = std::max(r, values[i]);
    return r;
}

void FluidGrid::validate() const {
    if (!(dx > 0.0) || !std::isfinite(dx)) throw std::invalid_argument("dx must be > 0");
    if (cells.size() < 4) throw std::invalid_argument("grid needs at least 4 cells");
    if (j_min > 0 || j_max() < 1) throw std::invalid_argument("grid must contain cells 0 and 1");
    for (double u : cells)
        if (!std::isfinite(u)) throw std::invalid_argument("non-finite cell value");
}

}  // namespace pbfv
