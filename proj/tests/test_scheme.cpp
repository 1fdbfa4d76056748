#include <doctest.h>

#include <random>

#include "pbfv/diagnostics.hpp"
#include "pbfv/scheme.hpp"

using namespace pbfv;

namespace {

SchemeConfig base_cfg() {
    SchemeConfig c;
    c.germ = GermParams(1.0);
    c.mu = 0.25;
    c.T = 1.0;
    c.m_p = 1.0;
    return c;
}

FluidGrid uniform_grid(double value, std::ptrdiff_t half, double dx) {
    FluidGrid g;
    g.cells.assign(static_cast<std::size_t>(2 * half), value);
    g.j_min = -half + 1;
    g.dx = dx;
    g.left_edge = -static_cast<double>(half) * dx;
    return g;
}

}  // namespace

TEST_CASE("init_state averages the datum exactly") {
    SchemeConfig c = base_cfg();
    c.T = 0.5;
    auto [grid, particle] = init_state(PiecewiseConstant::riemann(1, -1, 0), 0.0, 0.0, c, 0.1);
    for (std::ptrdiff_t j = grid.j_min; j <= grid.j_max(); ++j) CHECK(grid.at(j) == (j <= 0 ? 1.0 : -1.0));
    CHECK(grid.face(1) == doctest::Approx(0.0).scale(1));
    CHECK(particle.h == 0.0);

    auto [g2, p2] = init_state(PiecewiseConstant::riemann(1, -1, 0.05), 0.0, 0.0, c, 0.1);
    CHECK(g2.at(1) == doctest::Approx(0.0).scale(1));
    for (std::ptrdiff_t j = g2.j_min; j <= g2.j_max(); ++j)
        if (j != 1) CHECK(std::abs(g2.at(j)) == 1.0);

    PiecewiseConstant bad = PiecewiseConstant::riemann(1, std::nan(""), 0);
    CHECK_THROWS_AS(init_state(bad, 0, 0, c, 0.1), std::invalid_argument);
}

TEST_CASE("periodic half-width guard") {
    SchemeConfig c = base_cfg();
    c.germ = GermParams(0.25);  // L = 0.75 keeps mu = 0.5
    c.mu = 0.5;
    c.T = 1.0;
    c.m_p = 1e6;
    c.domain = DomainKind::Periodic;
    c.half_width = 6.0;
    CHECK_NOTHROW(init_state(PiecewiseConstant::constant(0), 0, 0, c, 0.1));
    c.half_width = 5.0;
    CHECK_THROWS_AS(init_state(PiecewiseConstant::constant(0), 0, 0, c, 0.1), DisturbanceError);
    c.half_width = 6.0;
    auto [grid, p] = init_state(PiecewiseConstant::constant(0), 0, 0, c, 0.1);
    CHECK(grid.cells.size() == 120);
}

TEST_CASE("compute_dt") {
    SchemeConfig c = base_cfg();
    c.mu = 0.5;
    c.m_p = 1e6;
    CHECK(compute_dt(1.0, 0.1, c) == doctest::Approx(0.05));
    c.m_p = 0.1;
    CHECK(compute_dt(1.0, 0.1, c) == doctest::Approx(0.025));
    c.velocity_update = VelocityUpdate::Implicit;
    CHECK(compute_dt(1.0, 0.1, c) == doctest::Approx(0.05));
    c.mu = 2.0;
    CHECK(compute_dt(1.0, 0.1, c) == doctest::Approx(0.05));  // CFL caps mu at 1/(2L)
    CHECK_THROWS_AS(compute_dt(std::numeric_limits<double>::infinity(), 0.1, c), std::invalid_argument);
    c.dt_override = 0.2;
    CHECK_THROWS_AS(compute_dt(1.0, 0.1, c), std::invalid_argument);
    c.dt_override = 0.04;
    CHECK(compute_dt(1.0, 0.1, c) == 0.04);
    c.velocity_update = VelocityUpdate::Explicit;
    CHECK_THROWS_AS(compute_dt(1.0, 0.1, c), std::invalid_argument);  // mass condition
}

TEST_CASE("tip state is a fixed point") {
    for (BulkFluxKind k : {BulkFluxKind::Godunov, BulkFluxKind::Rusanov, BulkFluxKind::EngquistOsher}) {
        SchemeConfig c = base_cfg();
        c.bulk = k;
        const FluidGrid g = uniform_grid(0.3, 10, 0.1);
        const ParticleState p{0.0, 0.3, 1.0};
        const StepResult r = step(g, p, c, 0.01);
        CHECK(r.grid.cells == g.cells);
        CHECK(r.particle.v == 0.3);
        CHECK(r.particle.h == doctest::Approx(0.003));
        const StepResult ri = step_implicit(g, p, c, 0.01);
        CHECK(ri.particle.v == 0.3);
        CHECK(ri.grid.cells == g.cells);
    }
}

TEST_CASE("symmetric standing shock does not move the particle") {
    SchemeConfig c = base_cfg();
    c.iface = InterfaceFluxKind::G1Only;
    FluidGrid g = uniform_grid(1.0, 10, 0.1);
    for (std::ptrdiff_t j = 1; j <= g.j_max(); ++j) g.at(j) = -1.0;
    const StepResult r = step(g, {0.0, 0.0, 1.0}, c, 0.01);
    CHECK(r.particle.v == 0.0);
    CHECK(r.grid.cells == g.cells);
}

TEST_CASE("one step conserves momentum") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> U(-2, 2);
    SchemeConfig c = base_cfg();
    c.domain = DomainKind::Periodic;
    FluidGrid g = uniform_grid(0.0, 20, 0.05);
    for (double& u : g.cells) u = U(rng);
    const ParticleState p{0.0, 0.4, 2.0};
    const StepResult r = step(g, p, c, 0.005);
    CHECK(std::abs(total_momentum(r.grid, r.particle) - total_momentum(g, p)) <= 1e-13);
}

TEST_CASE("padded guard fires when the disturbance reaches the edge") {
    SchemeConfig c = base_cfg();
    FluidGrid g = uniform_grid(0.0, 2, 0.1);  // 4 cells
    g.at(0) = 1.0;
    CHECK_THROWS_AS(step(g, {0, 0, 1}, c, 0.01), DisturbanceError);
}

TEST_CASE("implicit velocity solves its own equation") {
    SchemeConfig c = base_cfg();
    c.m_p = 0.01;
    FluidGrid g = uniform_grid(0.0, 10, 0.1);
    g.at(0) = 1.0;
    g.at(1) = -0.5;
    const ParticleState p{0.0, 0.2, c.m_p};
    const double dt = 0.01;
    const StepResult r = step_implicit(g, p, c, dt);
    const auto f = interface_fluxes(c.iface, c.bulk, 1.0, -0.5, r.particle.v, c.germ);
    CHECK(std::abs(r.particle.v - p.v - dt / c.m_p * (f.g_minus - f.g_plus)) <= 1e-9);
    CHECK(r.particle.h == doctest::Approx(p.v * dt));  // mesh follows the old speed
}

TEST_CASE("implicit and explicit velocities differ at second order") {
    SchemeConfig c = base_cfg();
    c.m_p = 0.5;
    FluidGrid g = uniform_grid(0.0, 10, 0.1);
    g.at(0) = 1.0;
    g.at(1) = -0.5;
    const ParticleState p{0.0, 0.2, c.m_p};
    double prev = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double dt = 0.02 / (1 << k);
        const double d = std::abs(step_implicit(g, p, c, dt).particle.v - step(g, p, c, dt).particle.v);
        if (k > 0) CHECK(prev / d == doctest::Approx(4.0).epsilon(0.1));
        prev = d;
    }
}

TEST_CASE("run basics") {
    SchemeConfig c = base_cfg();
    c.T = 0.0;
    const auto u0 = PiecewiseConstant::riemann(1, -1, 0);
    const Trajectory t0 = run(u0, 0, 0.5, c, 0.05);
    CHECK(t0.times.size() == 1);
    CHECK(t0.particle_path.size() == 1);
    CHECK(t0.snapshots.size() == 1);

    c.T = 0.5;
    const Trajectory a = run(u0, 0, 0.5, c, 0.05, {{0.1, 0.3}, false});
    const Trajectory b = run(u0, 0, 0.5, c, 0.05, {{0.1, 0.3}, false});
    CHECK(a.times.back() == 0.5);
    CHECK(a.times == b.times);
    CHECK(a.particle_path == b.particle_path);
    REQUIRE(a.snapshots.size() == 4);
    CHECK(a.snapshots[1].first == 0.1);
    CHECK(a.snapshots[2].first == 0.3);
    for (std::size_t i = 0; i < a.snapshots.size(); ++i) CHECK(a.snapshots[i].second.cells == b.snapshots[i].second.cells);
    for (std::size_t n = 1; n < a.times.size(); ++n) CHECK(a.times[n] > a.times[n - 1]);
    CHECK(a.diagnostics_log.size() == a.times.size());
    CHECK_THROWS_AS(run(u0, 0, 0.5, c, 0.05, {{0.7}, false}), std::invalid_argument);
    c.T = -1;
    CHECK_THROWS_AS(run(u0, 0, 0.5, c, 0.05), std::invalid_argument);
}

TEST_CASE("sample_solution follows the sheared cells") {
    SchemeConfig c = base_cfg();
    c.T = 0.2;
    const Trajectory tr = run(PiecewiseConstant::riemann(1, -1, 0), 0, 0.5, c, 0.05, {{}, true});
    REQUIRE(tr.times.size() > 3);
    const std::size_t n = 2;
    const double tn = tr.times[n], dt = tr.times[n + 1] - tn;
    const auto [hn, vn] = tr.particle_path[n];
    const FluidGrid& grid = tr.snapshots[n].second;

    const SolutionSample at = sample_solution(tr, tn, hn - 1e-9);
    CHECK(at.u == grid.at(0));
    CHECK(at.v == vn);
    CHECK(sample_solution(tr, tn + dt / 2, 0).h == doctest::Approx(hn + vn * dt / 2));
    // just right of the moved face of cell 1 at mid-step
    const double s = dt / 2;
    CHECK(sample_solution(tr, tn + s, grid.face(1) + vn * s + 1e-9).u == grid.at(1));
    CHECK(sample_solution(tr, tn + s, grid.face(1) + vn * s - 1e-9).u == grid.at(0));
    CHECK_THROWS_AS(sample_solution(tr, 1.0, 0), std::out_of_range);
    CHECK_THROWS_AS(sample_solution(tr, 0.1, 1e6), std::out_of_range);
}

TEST_CASE("runs conserve momentum and respect the a priori bounds") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> U(-2, 2);
    for (int trial = 0; trial < 20; ++trial) {
        SchemeConfig c = base_cfg();
        c.T = 0.3;
        c.bulk = trial % 2 ? BulkFluxKind::EngquistOsher : BulkFluxKind::Godunov;
        c.iface = trial % 3 ? InterfaceFluxKind::MaxGerm : InterfaceFluxKind::G1Only;
        c.domain = trial % 4 == 0 ? DomainKind::Periodic : DomainKind::Padded;
        c.half_width = 40.0;
        PiecewiseConstant u0;
        u0.values.push_back(U(rng));
        for (int k = 0; k < 5; ++k) {
            u0.breakpoints.push_back(-1.0 + 0.4 * k + 0.1 * U(rng));
            u0.values.push_back(U(rng));
        }
        const double v0 = U(rng);
        const Trajectory tr = run(u0, 0, v0, c, 0.02);
        const BoundsReport b = check_bounds(tr, u0, 0, v0, c);
        CHECK(b.ok());
    }
}

TEST_CASE("G1-only invariant region for subsonic Riemann data") {
    // left cells in [c-, c- + lam] nondecreasing, right cells in [c+ - lam, c+], u0 - u1 <= lam
    const double cm = 0.3, cp = -0.2, lam = 1.0;
    SchemeConfig c = base_cfg();
    c.iface = InterfaceFluxKind::G1Only;
    c.T = 1.0;
    c.m_p = 0.7;
    const Trajectory tr = run(PiecewiseConstant::riemann(cm, cp, 0), 0, 0.05, c, 0.02, {{}, true});
    for (const auto& [t, g] : tr.snapshots) {
        for (std::ptrdiff_t j = g.j_min; j <= 0; ++j) {
            CHECK(g.at(j) >= cm - 1e-14);
            CHECK(g.at(j) <= cm + lam + 1e-14);
            if (j > g.j_min) CHECK(g.at(j) >= g.at(j - 1) - 1e-14);
        }
        for (std::ptrdiff_t j = 1; j <= g.j_max(); ++j) {
            CHECK(g.at(j) >= cp - lam - 1e-14);
            CHECK(g.at(j) <= cp + 1e-14);
        }
        CHECK(g.at(0) - g.at(1) <= lam + 1e-14);
    }
}
