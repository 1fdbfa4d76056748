#include "pbfv/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace pbfv {

void Germ2RiemannProblem::validate() const {
    if (!std::isfinite(u_minus) || !std::isfinite(u_plus) || !std::isfinite(v0))
        throw std::invalid_argument("Riemann datum must be finite");
    if (!(m_p > 0.0)) throw std::invalid_argument("mass must be > 0");
    const GermParams g(lambda);
    if (!(u_minus > u_plus)) throw std::invalid_argument("closed form needs u_minus > u_plus");
    if (classify({u_minus, u_plus}, v0, g) == GermRegion::Outside)
        throw std::invalid_argument("Riemann datum is not admissible at the initial speed");
}

ParticleTrack germ2_track(const Germ2RiemannProblem& p, double t) {
    p.validate();
    if (!(t >= 0.0)) throw std::invalid_argument("t must be >= 0");
    const double mean = 0.5 * (p.u_minus + p.u_plus);
    const double jump = p.u_minus - p.u_plus;
    const double rate = jump / p.m_p;
    const double gap = p.v0 - mean;
    return {mean * t - gap * std::expm1(-rate * t) / rate, mean + gap * std::exp(-rate * t)};
}

ExactSolution germ2_exact(const Germ2RiemannProblem& p, double t) {
    const ParticleTrack tr = germ2_track(p, t);
    // h' runs monotonically from v0 to the mean state, so the frozen datum has to stay
    // admissible at every intermediate speed.
    if (!in_germ_inflated({p.u_minus, p.u_plus}, tr.hprime, GermParams(p.lambda), kGeomTol))
        throw std::domain_error("Riemann datum leaves the germ along the particle path");
    return {tr.h, tr.hprime, PiecewiseConstant::riemann(p.u_minus, p.u_plus, tr.h)};
}

ParticleTrack ode_oracle(double u_minus, double u_plus, double v0, double m_p, double t) {
    if (!(t >= 0.0) || !(m_p > 0.0)) throw std::invalid_argument("need t >= 0 and m_p > 0");
    if (t == 0.0) return {0.0, v0};
    const double jump = u_minus - u_plus;
    const double mean = 0.5 * (u_minus + u_plus);
    auto accel = [&](double hp) { return jump * (mean - hp) / m_p; };

    constexpr int kSteps = 100000;
    const double dt = t / kSteps;
    double h = 0.0, hp = v0;
    for (int i = 0; i < kSteps; ++i) {
        const double k1h = hp, k1v = accel(hp);
        const double k2h = hp + 0.5 * dt * k1v, k2v = accel(k2h);
        const double k3h = hp + 0.5 * dt * k2v, k3v = accel(k3h);
        const double k4h = hp + dt * k3v, k4v = accel(k4h);
        h += dt / 6.0 * (k1h + 2.0 * k2h + 2.0 * k3h + k4h);
        hp += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    return {h, hp};
}

}  // namespace pbfv
