#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mirg/graph.hpp"

namespace mirg {

/* Cone geometry for hidden regular variation.
 *
 * After removing a closed cone C from the nonnegative orthant, the remaining
 * mass is described in generalized polar coordinates
 *     GPOLAR(x) = ( d(x, C), x / d(x, C) ),
 * which is what gpolar computes.  Supported cones:
 *
 *   diagonal_ray  { x1 = x2, x >= 0 } in the plane
 *   wedge(a, b)   { a*x1 <= x2 <= b*x1, x >= 0 },  0 < a < b
 *   origin        { 0 }  (distance is just the norm)
 *
 * Wedge and diagonal distances are Euclidean (p = 2); other orders are
 * rejected as unsupported.  Points on the cone have distance 0 and no polar
 * representation.
 */

struct ConeSpec {
    enum class Kind { diagonal_ray, wedge, origin };
    Kind kind = Kind::origin;
    double lower = 0, upper = 0;  // wedge slopes

    static ConeSpec diagonal_ray();
    static ConeSpec wedge(double a, double b);
    static ConeSpec origin();
};

double distance_to_cone(std::span<const double> x, const ConeSpec& cone, double p);

struct PolarPoint {
    double r = 0;
    std::vector<double> angle;  // x / r; satisfies distance_to_cone(angle) == 1
};

PolarPoint gpolar(std::span<const double> x, const ConeSpec& cone, double p);

/* Per-node wedge coordinates of a two-layer degree matrix:
 *   xi_i  = d_i2 - slope * d_i1   (signed excess over the upper wedge ray)
 *   eta_i = d_i2 / d_i1           (direction; +infinity when d_i1 = 0 < d_i2)
 * Rows with both degrees zero carry no direction and are flagged excluded.
 */
struct XiEta {
    std::vector<double> xi, eta;          // aligned with rows
    std::vector<std::uint8_t> excluded;   // 1 where both degrees were zero
    std::size_t excluded_count = 0;

    // xi/eta with excluded rows dropped, original order preserved
    std::pair<std::vector<double>, std::vector<double>> compact() const;
};

XiEta xi_eta(const DegreeMatrix& d, double slope);

/* Closed-form tail limit of the fully dependent two-layer example:
 *     limit(u, v, alpha) =
 *       u^{-2 alpha} * (2^{1-alpha} sqrt(pi) / Gamma(alpha + 1/2))
 *                    * Integral_0^{1/v} z^{2 alpha} phi(z) dz,
 * with phi the standard normal density and v = 0 meaning an infinite upper
 * limit (where the integral cancels the constant and the value is u^{-2 alpha}
 * exactly).  The integral is evaluated by adaptive Simpson quadrature to
 * relative tolerance ~1e-12.  Requires u > 0, v >= 0, alpha > 0.
 */
double example31_limit(double u, double v, double alpha);

}  // namespace mirg
