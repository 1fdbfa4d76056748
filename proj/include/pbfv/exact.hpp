#pragma once

#include "pbfv/germ.hpp"
#include "pbfv/state.hpp"

namespace pbfv {

// Riemann datum u_minus 1_{x<0} + u_plus 1_{x>=0} with particle at 0 moving at v0.
struct Germ2RiemannProblem {
    double u_minus = 1.0;
    double u_plus = -1.0;
    double v0 = 0.0;
    double m_p = 1.0;
    double lambda = 1.0;

    void validate() const;
    PiecewiseConstant datum() const { return PiecewiseConstant::riemann(u_minus, u_plus, 0.0); }
};

struct ParticleTrack {
    double h = 0.0;
    double hprime = 0.0;
};

struct ExactSolution {
    double h = 0.0;
    double hprime = 0.0;
    PiecewiseConstant u;
};

ParticleTrack germ2_track(const Germ2RiemannProblem& p, double t);
ExactSolution germ2_exact(const Germ2RiemannProblem& p, double t);

// RK4 on m_p h'' = (u- - u+)((u- + u+)/2 - h') with 1e5 steps.
ParticleTrack ode_oracle(double u_minus, double u_plus, double v0, double m_p, double t);

}  // namespace pbfv
