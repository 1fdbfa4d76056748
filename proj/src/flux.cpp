#include "pbfv/flux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pbfv {

std::string_view to_string(BulkFluxKind k) {
    switch (k) {
        case BulkFluxKind::Godunov: return "godunov";
        case BulkFluxKind::Rusanov: return "rusanov";
        case BulkFluxKind::EngquistOsher: return "eo";
    }
    return "?";
}

std::string_view to_string(InterfaceFluxKind k) {
    switch (k) {
        case InterfaceFluxKind::MaxGerm: return "max-germ";
        case InterfaceFluxKind::G1Only: return "g1-only";
    }
    return "?";
}

namespace {

double godunov(double a, double b, double v) {
    if (a <= b) return moving_flux(std::clamp(v, a, b), v);  // f_v is minimal at v
    return std::max(moving_flux(a, v), moving_flux(b, v));
}

double rusanov(double a, double b, double v) {
    const double s = std::max(std::abs(a - v), std::abs(b - v));
    return 0.5 * (moving_flux(a, v) + moving_flux(b, v)) - 0.5 * s * (b - a);
}

double engquist_osher(double a, double b, double v) {
    const double p = std::max(a - v, 0.0);
    const double q = std::min(b - v, 0.0);
    return 0.5 * p * p + 0.5 * q * q - 0.5 * v * v;
}

}  // namespace

double bulk_flux(BulkFluxKind kind, double a, double b, double v) {
    switch (kind) {
        case BulkFluxKind::Godunov: return godunov(a, b, v);
        case BulkFluxKind::Rusanov: return rusanov(a, b, v);
        case BulkFluxKind::EngquistOsher: return engquist_osher(a, b, v);
    }
    throw std::invalid_argument("unknown bulk flux");
}

InterfaceFluxes interface_fluxes(InterfaceFluxKind kind, BulkFluxKind bulk, double a, double b,
                                 double v, const GermParams& g) {
    const double lam = g.lambda;
    switch (kind) {
        case InterfaceFluxKind::MaxGerm:
            return {bulk_flux(bulk, a, std::min(b + lam, std::max(a, v)), v),
                    bulk_flux(bulk, std::max(a - lam, std::min(b, v)), b, v)};
        case InterfaceFluxKind::G1Only:
            return {bulk_flux(bulk, a, b + lam, v), bulk_flux(bulk, a - lam, b, v)};
    }
    throw std::invalid_argument("unknown interface flux");
}

LipschitzBound lipschitz_bound(BulkFluxKind bulk, InterfaceFluxKind /*iface*/, double m, double M,
                               double v_lo, double v_hi, const GermParams& g) {
    if (!(m <= M)) throw std::invalid_argument("lipschitz_bound: m > M");
    if (!(v_lo <= v_hi)) throw std::invalid_argument("lipschitz_bound: v_lo > v_hi");
    const double lo = m - g.lambda, hi = M + g.lambda;
    const double w = std::max({std::abs(lo - v_hi), std::abs(hi - v_lo), std::abs(lo - v_lo),
                               std::abs(hi - v_hi)});
    // Rusanov's speed switches branch across the box: slopes reach twice the wave speed.
    if (bulk == BulkFluxKind::Rusanov) return {2.0 * w};
    return {w};
}

}  // namespace pbfv
