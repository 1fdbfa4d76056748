#pragma once

#include <string_view>

#include "pbfv/germ.hpp"

namespace pbfv {

enum class BulkFluxKind { Godunov, Rusanov, EngquistOsher };
enum class InterfaceFluxKind { MaxGerm, G1Only };

std::string_view to_string(BulkFluxKind k);
std::string_view to_string(InterfaceFluxKind k);

struct InterfaceFluxes {
    double g_minus = 0.0;  // flux leaving cell 0 through the particle
    double g_plus = 0.0;   // flux entering cell 1 through the particle
};

struct LipschitzBound {
    double L = 0.0;
};

double bulk_flux(BulkFluxKind kind, double a, double b, double v);

InterfaceFluxes interface_fluxes(InterfaceFluxKind kind, BulkFluxKind bulk, double a,
                                 double b, double v, const GermParams& g);

// Closed-form over-estimate of every flux slope on [m-lambda, M+lambda]^2 x [v_lo, v_hi].
LipschitzBound lipschitz_bound(BulkFluxKind bulk, InterfaceFluxKind iface, double m, double M,
                               double v_lo, double v_hi, const GermParams& g);

}  // namespace pbfv
