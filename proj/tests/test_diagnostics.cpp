#include <doctest.h>

#include <random>

#include "pbfv/diagnostics.hpp"

using namespace pbfv;

namespace {

FluidGrid grid_of(std::vector<double> cells, std::ptrdiff_t j_min, double dx) {
    FluidGrid g;
    g.cells = std::move(cells);
    g.j_min = j_min;
    g.dx = dx;
    g.left_edge = static_cast<double>(j_min - 1) * dx;
    return g;
}

PiecewiseConstant random_datum(std::mt19937_64& rng, int pieces, double lo, double hi) {
    std::uniform_real_distribution<double> U(lo, hi), X(-1.0, 1.0);
    PiecewiseConstant u;
    for (int k = 0; k < pieces - 1; ++k) u.breakpoints.push_back(X(rng));
    std::sort(u.breakpoints.begin(), u.breakpoints.end());
    for (int k = 0; k < pieces; ++k) u.values.push_back(U(rng));
    return u;
}

}  // namespace

TEST_CASE("bounds envelope") {
    const GermParams g(1.0);
    auto e = bounds_envelope(PiecewiseConstant::riemann(1, -1, 0), 0, g);
    CHECK(e.m == -1);
    CHECK(e.M == 1);
    CHECK(e.v_lo == -1);
    CHECK(e.v_hi == 1);
    e = bounds_envelope(PiecewiseConstant::constant(0), 2, g);
    CHECK(e.m == -1);
    CHECK(e.M == 1);
    CHECK(e.v_lo == -1);
    CHECK(e.v_hi == 2);
    const GermParams g3(3.0);
    e = bounds_envelope(PiecewiseConstant::constant(0.5), 0.5, g3);
    CHECK(e.m == -2.5);
    CHECK(e.M == 3.5);
    CHECK(e.v_lo == -2.5);
    CHECK(e.v_hi == 3.5);
}

TEST_CASE("raising the datum raises the envelope") {
    std::mt19937_64 rng(31);
    const GermParams g(0.7);
    for (int i = 0; i < 500; ++i) {
        PiecewiseConstant u = random_datum(rng, 6, -2, 2);
        const BoundsEnvelope a = bounds_envelope(u, 0.1, g);
        u.values[static_cast<std::size_t>(i) % u.values.size()] += 0.5;
        const BoundsEnvelope b = bounds_envelope(u, 0.1, g);
        CHECK(b.m >= a.m);
        CHECK(b.M >= a.M);
        CHECK(b.v_lo >= a.v_lo);
        CHECK(b.v_hi >= a.v_hi);
    }
}

TEST_CASE("momentum and total variation") {
    CHECK(total_momentum(grid_of(std::vector<double>(10, 0.0), -4, 0.1), {0, 0, 1}) == 0.0);
    CHECK(total_momentum(grid_of(std::vector<double>(10, 1.0), -4, 0.1), {0, 0.5, 2}) ==
          doctest::Approx(2.0).epsilon(1e-15));
    CHECK(total_variation(grid_of({2, 2, 2, 2}, -1, 0.1)) == 0.0);
    CHECK(total_variation(grid_of({1, 1, -1, -1}, -1, 0.1)) == 2.0);
    CHECK(total_variation(grid_of({0, 1, 0, 1}, -1, 0.1)) == 3.0);
    CHECK(total_variation(grid_of({0, 1, 0, 1}, -1, 0.1), DomainKind::Periodic) == 4.0);
}

TEST_CASE("entropy residual") {
    SchemeConfig cfg;
    cfg.germ = GermParams(1.0);
    const double dt = 0.01;

    const FluidGrid flat = grid_of(std::vector<double>(12, 0.0), -5, 0.1);
    const StepResult s = step(flat, {0, 0, 1}, cfg, dt);
    for (double r : entropy_residual(flat, {0, 0, 1}, s.grid, s.particle, cfg, dt, {0, 0}))
        CHECK(r == 0.0);

    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> U(-2, 2), W(0, 1);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> cells(24);
        for (double& u : cells) u = U(rng);
        // keep the far cells flat so the padded guard stays quiet
        cells[0] = cells[1] = cells[2];
        cells[23] = cells[22] = cells[21];
        const FluidGrid g = grid_of(cells, -11, 0.05);
        const ParticleState p{0, U(rng) / 2, 1.0};
        const BoundsEnvelope env{-3, 3, -3, 3};
        const double step_dt = compute_dt(g, p, cfg, env);
        const StepResult r = step(g, p, cfg, step_dt);

        // constant kappa away from the particle: plain Kruzhkov cell inequality
        const double kappa = U(rng);
        const auto res = entropy_residual(g, p, r.grid, r.particle, cfg, step_dt, {kappa, kappa});
        for (std::size_t k = 0; k < res.size(); ++k)
            if (k != g.index(0) && k != g.index(1)) CHECK(res[k] <= kNumTol);

        // c in H: every cell including the particle pair
        const double lam = cfg.germ.lambda;
        GermPoint c{p.v + lam * W(rng), p.v - lam * W(rng)};
        if (trial % 2) c = {c.u_plus + lam, c.u_plus};
        if (dist1_to_H(c, p.v, cfg.germ) > 0) continue;
        for (double x : entropy_residual(g, p, r.grid, r.particle, cfg, step_dt, c)) CHECK(x <= kNumTol);
    }
}

TEST_CASE("dissipativity probe") {
    const GermParams g(1.0);
    const StateBox box{-2, 2};
    for (BulkFluxKind k : {BulkFluxKind::Godunov, BulkFluxKind::EngquistOsher})
        for (double v : {-1.0, 0.0, 1.0}) {
            CHECK(dissipativity_probe(InterfaceFluxKind::MaxGerm, k, g, box, v, 200).worst() >= -kNumTol);
            CHECK(dissipativity_probe(InterfaceFluxKind::G1Only, k, g, box, v, 200).worst() >= -kNumTol);
        }
    const auto bad = dissipativity_probe([](double a, double b) { return -a - 2 * b; }, box, 50);
    CHECK(bad.worst_first < 0);
    CHECK(bad.worst_second < bad.worst_first);
    const auto good = dissipativity_probe([](double a, double b) { return a + b; }, box, 50);
    CHECK(good.worst() == 0.0);
    CHECK_THROWS_AS(dissipativity_probe([](double, double) { return 0.0; }, box, 1), std::invalid_argument);
}

TEST_CASE("max-speed viscosity breaks interface dissipativity") {
    const GermParams g(1.0);
    const StateBox box{-2.0, 2.0};
    for (InterfaceFluxKind f : {InterfaceFluxKind::MaxGerm, InterfaceFluxKind::G1Only}) {
        CHECK(dissipativity_probe(f, BulkFluxKind::Godunov, g, box, 0.0, 100).worst() >= -1e-10);
        CHECK(dissipativity_probe(f, BulkFluxKind::Rusanov, g, box, 1.0, 100).worst() < -1e-3);
    }
}

TEST_CASE("maximality probe") {
    const GermParams g(1.0);
    const auto v = maximality_probe(g, 0.0, 1000, {{1, 0}, {2, 0}, {0.3, -0.3}, {2, -2}}, 3);
    CHECK(v[0].passes);
    CHECK(v[0].region == GermRegion::G1);
    CHECK_FALSE(v[1].passes);
    CHECK(v[1].region == GermRegion::Outside);
    CHECK(v[2].passes);
    CHECK(v[3].passes);
    for (const auto& r : v) CHECK_FALSE(r.contradiction);
    CHECK_THROWS_AS(sample_H(g, 0, 50, 1), std::invalid_argument);

    const auto a = sample_H(g, 0.2, 500, 9), b = sample_H(g, 0.2, 500, 9);
    REQUIRE(a.size() == 500);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].u_minus == b[i].u_minus);
        CHECK(dist1_to_H(a[i], 0.2, g) <= 1e-12);
    }
}

TEST_CASE("maximality probe rejects points just outside a box edge") {
    // deficit is (d^2)/2 at q = (v, p+); the fixed sample alone would miss it
    const GermParams g(1.0);
    const double v = 0.5, d = 0.004;
    const GermPoint p{v - d, -0.39140924810718136};
    const auto r = maximality_probe(g, v, 10000, {p}, 1).front();
    CHECK(r.region == GermRegion::Outside);
    CHECK_FALSE(r.passes);
    CHECK(r.worst_xi == doctest::Approx(-0.5 * d * d).epsilon(1e-9));
    CHECK_FALSE(r.contradiction);
}

TEST_CASE("self-convergence against a fine reference") {
    std::mt19937_64 rng(51);
    SchemeConfig cfg;
    cfg.germ = GermParams(1.0);
    cfg.T = 0.5;
    cfg.mu = 0.25;
    const PiecewiseConstant u0 = random_datum(rng, 4, -1, 1);
    const auto rows = convergence_study(u0, 0.0, 0.2, cfg, {0.04, 0.02, 0.01}, 0.0025);
    REQUIRE(rows.size() == 3);
    CHECK(std::isnan(rows[0].order_u));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].err_u_L1 < rows[i - 1].err_u_L1);
        CHECK(rows[i].err_h_sup < rows[i - 1].err_h_sup);
    }
    CHECK_THROWS_AS(convergence_study(u0, 0.0, 0.2, cfg, {0.04, 0.02}, 0.001), std::invalid_argument);
    CHECK_THROWS_AS(convergence_study(u0, 0.0, 0.2, cfg, {0.04, 0.05, 0.01}, 0.001), std::invalid_argument);
}
