#pragma once

#include <string_view>

namespace pbfv {

// Absolute tolerance for boundary classification.
inline constexpr double kGeomTol = 1e-12;
// Tolerance for sign/monotonicity checks on computed quantities.
inline constexpr double kNumTol = 1e-10;

struct GermPoint {
    double u_minus = 0.0;  // left trace
    double u_plus = 0.0;   // right trace
};

struct GermParams {
    double lambda = 1.0;

    GermParams() = default;
    explicit GermParams(double lam);
};

enum class GermRegion { G1, G2, G3, Outside };

std::string_view to_string(GermRegion r);

// Burgers flux seen from a frame moving at speed v: u^2/2 - v u.
// Evaluated as ((u-v)^2 - v^2)/2 so that v+A and v-A give identical results.
inline double moving_flux(double u, double v) {
    const double d = u - v;
    return 0.5 * d * d - 0.5 * v * v;
}

double kruzhkov_flux(double a, double b, double v);
double xi(GermPoint p, GermPoint q, double v);

GermRegion classify(GermPoint p, double v, const GermParams& g);

// Germ membership with every inequality relaxed by `band`.
bool in_germ_inflated(GermPoint p, double v, const GermParams& g, double band);

// L1 distance to the closure of the line u- = u+ + lambda united with the
// subsonic box.
double dist1_to_H(GermPoint p, double v, const GermParams& g);
GermPoint project_to_H(GermPoint p, double v, const GermParams& g);

}  // namespace pbfv
