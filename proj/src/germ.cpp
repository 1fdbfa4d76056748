#include "pbfv/germ.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pbfv {

GermParams::GermParams(double lam) : lambda(lam) {
    if (!std::isfinite(lam) || !(lam > 0.0)) {
        throw std::invalid_argument("lambda must be finite and > 0, got " + std::to_string(lam));
    }
}

std::string_view to_string(GermRegion r) {
    switch (r) {
        case GermRegion::G1: return "G1";
        case GermRegion::G2: return "G2";
        case GermRegion::G3: return "G3";
        case GermRegion::Outside: return "Outside";
    }
    return "?";
}

double kruzhkov_flux(double a, double b, double v) {
    if (a > b) return moving_flux(a, v) - moving_flux(b, v);
    if (a < b) return moving_flux(b, v) - moving_flux(a, v);
    return 0.0;
}

double xi(GermPoint p, GermPoint q, double v) {
    return kruzhkov_flux(p.u_minus, q.u_minus, v) - kruzhkov_flux(p.u_plus, q.u_plus, v);
}

GermRegion classify(GermPoint p, double v, const GermParams& g) {
    const double lam = g.lambda;
    const double um = p.u_minus, up = p.u_plus;
    const double jump = um - up;
    if (std::abs(jump - lam) <= kGeomTol) return GermRegion::G1;
    if (v <= um && um <= v + lam && v - lam <= up && up <= v && jump < lam) return GermRegion::G2;
    if (std::abs(up + um - 2.0 * v) <= lam && jump > lam) return GermRegion::G3;
    return GermRegion::Outside;
}

bool in_germ_inflated(GermPoint p, double v, const GermParams& g, double band) {
    const double lam = g.lambda;
    const double um = p.u_minus, up = p.u_plus;
    const double jump = um - up;
    if (std::abs(jump - lam) <= band) return true;
    if (v - band <= um && um <= v + lam + band && v - lam - band <= up && up <= v + band &&
        jump < lam + band)
        return true;
    return std::abs(up + um - 2.0 * v) <= lam + band && jump > lam - band;
}

namespace {

double excess(double x, double lo, double hi) { return std::max({0.0, lo - x, x - hi}); }

}  // namespace

double dist1_to_H(GermPoint p, double v, const GermParams& g) {
    const double lam = g.lambda;
    const double jump = p.u_minus - p.u_plus;
    const double d_line = std::abs(jump - lam);
    // Past the line every path into the box crosses it first.
    if (jump > lam) return d_line;
    const double d_box = excess(p.u_minus, v, v + lam) + excess(p.u_plus, v - lam, v);
    return std::min(d_line, d_box);
}

GermPoint project_to_H(GermPoint p, double v, const GermParams& g) {
    const double lam = g.lambda;
    const double um = p.u_minus, up = p.u_plus;
    const double jump = um - up;
    if (jump == lam) return p;

    // Among the equally close line points, take one inside the box when possible.
    if (jump > lam) {
        const double e = jump - lam;
        const double s_lo = std::max(0.0, um - v - lam);
        const double s_hi = std::min(e, um - v);
        const double s = s_lo <= s_hi ? s_lo : e;
        return {um - s, up + (e - s)};
    }

    const GermPoint box{std::clamp(um, v, v + lam), std::clamp(up, v - lam, v)};
    const double d_box = std::abs(box.u_minus - um) + std::abs(box.u_plus - up);
    const double e = lam - jump;
    if (d_box <= e) return box;
    return {um, up - e};
}

}  // namespace pbfv
