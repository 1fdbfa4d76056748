#include "pbfv/commands.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <string>

#include "pbfv/csv.hpp"
#include "pbfv/diagnostics.hpp"
#include "pbfv/exact.hpp"

namespace pbfv {

namespace fs = std::filesystem;

namespace {

std::ofstream open_csv(const fs::path& path, const char* header) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << header << '\n';
    return os;
}

class Gates {
public:
    explicit Gates(std::ostream& report) : report_(report) {}

    // value must not exceed limit
    void at_most(const std::string& check, double value, double limit) {
        if (value <= limit) return;
        report_ << "FAIL check=" << check << " value=" << format_number(value)
                << " limit=" << format_number(limit) << '\n';
        ok_ = false;
    }

    int status() const { return ok_ ? 0 : 1; }

private:
    std::ostream& report_;
    bool ok_ = true;
};

const PiecewiseConstant& need_datum(const ExperimentConfig& cfg) {
    if (!cfg.datum)
        throw ConfigError(0, "this command needs an initial datum (u_minus/u_plus or breakpoints/values)");
    return *cfg.datum;
}

}  // namespace

int cmd_run(const ExperimentConfig& cfg, const fs::path& out, std::ostream& report) {
    const PiecewiseConstant& u0 = need_datum(cfg);
    fs::create_directories(out);
    RunOptions opts;
    opts.snapshot_times = cfg.snapshots;
    const Trajectory traj = run(u0, cfg.h0, cfg.v0, cfg.scheme, cfg.dx, opts);

    {
        std::ofstream os = open_csv(out / "particle.csv", "t,h,v,momentum,tv,accel,trace_germ_dist");
        for (std::size_t n = 0; n < traj.times.size(); ++n) {
            const DiagnosticsRecord& r = traj.diagnostics_log[n];
            write_csv_row(os, {r.t, traj.particle_path[n].first, r.v, r.momentum, r.tv, r.accel,
                               r.trace_germ_dist});
        }
    }
    for (const auto& [t, grid] : traj.snapshots) {
        std::ofstream os = open_csv(out / ("u_" + format_shortest(t) + ".csv"), "x,u");
        for (std::ptrdiff_t j = grid.j_min; j <= grid.j_max(); ++j)
            write_csv_row(os, {grid.face(j) + 0.5 * grid.dx, grid.at(j)});
    }

    const BoundsReport b = check_bounds(traj, u0, cfg.h0, cfg.v0, cfg.scheme);
    Gates gates(report);
    gates.at_most("linf_bound", b.linf, kNumTol);
    gates.at_most("tv_bound", b.tv, kNumTol);
    gates.at_most("velocity_bound", b.velocity, kNumTol);
    gates.at_most("accel_bound", b.accel, kNumTol);
    gates.at_most("momentum_drift", b.momentum, 0.0);
    return gates.status();
}

int cmd_convergence(const ExperimentConfig& cfg, const fs::path& out, std::ostream& report) {
    const PiecewiseConstant& u0 = need_datum(cfg);
    fs::create_directories(out);

    std::vector<ConvergenceRow> rows;
    bool exact = false;
    if (cfg.riemann) {
        Germ2RiemannProblem p{u0.values[0], u0.values[1], cfg.v0, cfg.scheme.m_p,
                              cfg.scheme.germ.lambda};
        try {
            p.validate();
            exact = cfg.h0 == 0.0;
        } catch (const std::invalid_argument&) {
            exact = false;
        }
        if (exact) rows = convergence_study(p, cfg.scheme, cfg.levels);
    }
    if (!exact) {
        const double ref = cfg.reference_dx.value_or(cfg.levels.back() / 4.0);
        rows = convergence_study(u0, cfg.h0, cfg.v0, cfg.scheme, cfg.levels, ref);
    }

    {
        std::ofstream os = open_csv(out / "convergence.csv", "dx,err_u_L1,err_h_sup,err_v_sup,order_u,order_h");
        for (const ConvergenceRow& r : rows)
            write_csv_row(os, {r.dx, r.err_u_L1, r.err_h_sup, r.err_v_sup, r.order_u, r.order_h});
    }

    Gates gates(report);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const std::string at = "@dx=" + format_shortest(rows[i].dx);
        // strict decrease: fine error must stay below the coarse one
        auto strictly_below = [&](const char* name, double fine, double coarse) {
            if (!(fine < coarse)) gates.at_most(std::string(name) + "_decrease" + at, fine, coarse);
        };
        strictly_below("err_u_L1", rows[i].err_u_L1, rows[i - 1].err_u_L1);
        strictly_below("err_h_sup", rows[i].err_h_sup, rows[i - 1].err_h_sup);
        strictly_below("err_v_sup", rows[i].err_v_sup, rows[i - 1].err_v_sup);
    }
    return gates.status();
}

int cmd_probe_flux(const ExperimentConfig& cfg, const fs::path& out, std::ostream& report) {
    fs::create_directories(out);
    const SchemeConfig& s = cfg.scheme;
    const StateBox box{-cfg.probe_half_box, cfg.probe_half_box};
    std::ofstream os = open_csv(out / "probe_report.csv", "iface,flux,v,worst_first,worst_second,pass");
    Gates gates(report);
    for (BulkFluxKind bulk : {BulkFluxKind::Godunov, BulkFluxKind::Rusanov, BulkFluxKind::EngquistOsher}) {
        for (double v : cfg.probe_speeds) {
            const DissipativityReport r = dissipativity_probe(s.iface, bulk, s.germ, box, v, cfg.probe_grid);
            const bool pass = r.worst() >= -kNumTol;
            os << to_string(s.iface) << ',' << to_string(bulk) << ',' << format_number(v) << ','
               << format_number(r.worst_first) << ',' << format_number(r.worst_second) << ','
               << (pass ? 1 : 0) << '\n';
            // all three are reported; only the configured flux is gated
            if (bulk == s.bulk)
                gates.at_most("dissipativity/" + std::string(to_string(s.iface)) + "/" +
                                  std::string(to_string(bulk)) + "@v=" + format_shortest(v),
                              -r.worst(), kNumTol);
        }
    }
    return gates.status();
}

int cmd_probe_germ(const ExperimentConfig& cfg, const fs::path& out, std::ostream& report) {
    fs::create_directories(out);
    const GermParams& g = cfg.scheme.germ;
    const double v = cfg.v0, half = 3.0 * g.lambda;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> coord(-half, half);
    std::vector<GermPoint> candidates(static_cast<std::size_t>(cfg.probe_candidates));
    for (GermPoint& p : candidates) {
        const double a = coord(rng);
        const double b = coord(rng);
        p = {v + a, v + b};
    }
    const auto verdicts = maximality_probe(g, v, cfg.probe_h_samples, candidates, cfg.seed + 1);

    std::ofstream os = open_csv(out / "probe_report.csv",
                                "u_minus,u_plus,region,passes,worst_xi,in_band,contradiction");
    double contradictions = 0.0, rejected_inside = 0.0;
    for (const MaximalityVerdict& r : verdicts) {
        os << format_number(r.p.u_minus) << ',' << format_number(r.p.u_plus) << ','
           << to_string(r.region) << ',' << (r.passes ? 1 : 0) << ',' << format_number(r.worst_xi)
           << ',' << (r.in_band ? 1 : 0) << ',' << (r.contradiction ? 1 : 0) << '\n';
        if (r.contradiction) contradictions += 1.0;
        if (r.region != GermRegion::Outside && !r.passes) rejected_inside += 1.0;
    }
    Gates gates(report);
    gates.at_most("maximality_outside_passes", contradictions, 0.0);
    gates.at_most("maximality_inside_rejected", rejected_inside, 0.0);
    return gates.status();
}

}  // namespace pbfv
