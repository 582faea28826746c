#include "mirg/cones.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mirg {

ConeSpec ConeSpec::diagonal_ray() { return {Kind::diagonal_ray, 1.0, 1.0}; }

ConeSpec ConeSpec::wedge(double a, double b) {
    if (!(a > 0) || !(b > a))
        throw std::invalid_argument("wedge: slopes must satisfy 0 < a < b");
    return {Kind::wedge, a, b};
}

ConeSpec ConeSpec::origin() { return {Kind::origin, 0, 0}; }

namespace {

double norm_p(std::span<const double> x, double p) {
    if (std::isinf(p) && p > 0) {
        double m = 0;
        for (double v : x) m = std::max(m, std::fabs(v));
        return m;
    }
    if (p == 1.0) {
        double s = 0;
        for (double v : x) s += std::fabs(v);
        return s;
    }
    double s = 0;
    for (double v : x) s += std::pow(std::fabs(v), p);
    return std::pow(s, 1.0 / p);
}

// Euclidean distance from x (any sign) to the ray { t*(1, slope) : t >= 0 }.
// If the perpendicular foot falls at t < 0 the nearest point is the vertex.
double distance_to_ray(double x1, double x2, double slope) {
    const double nrm = std::sqrt(1.0 + slope * slope);
    const double t = (x1 + slope * x2) / nrm;  // foot parameter along the unit direction
    if (t < 0) return std::sqrt(x1 * x1 + x2 * x2);
    return std::fabs(x2 - slope * x1) / nrm;
}

void require_plane_euclidean(std::span<const double> x, double p, const char* what) {
    if (x.size() != 2)
        throw std::invalid_argument(std::string(what) + ": cone lives in the plane (need 2 coordinates)");
    if (!(p == 2.0))
        throw std::invalid_argument(std::string(what) +
                                    ": only the Euclidean distance (p=2) is supported");
}

}  // namespace

double distance_to_cone(std::span<const double> x, const ConeSpec& cone, double p) {
    for (double v : x)
        if (!std::isfinite(v)) throw std::domain_error("distance_to_cone: non-finite coordinate");

    switch (cone.kind) {
        case ConeSpec::Kind::origin: {
            if (std::isinf(p) && p > 0) return norm_p(x, p);
            if (!(p >= 1))
                throw std::invalid_argument("distance_to_cone: norm order must be >= 1");
            return norm_p(x, p);
        }
        case ConeSpec::Kind::diagonal_ray: {
            require_plane_euclidean(x, p, "diagonal_ray");
            return distance_to_ray(x[0], x[1], 1.0);
        }
        case ConeSpec::Kind::wedge: {
            require_plane_euclidean(x, p, "wedge");
            const double x1 = x[0], x2 = x[1];
            if (x2 > cone.upper * x1) return distance_to_ray(x1, x2, cone.upper);
            if (x2 < cone.lower * x1) return distance_to_ray(x1, x2, cone.lower);
            return 0.0;  // inside the wedge
        }
    }
    throw std::logic_error("distance_to_cone: unreachable");
}

PolarPoint gpolar(std::span<const double> x, const ConeSpec& cone, double p) {
    const double r = distance_to_cone(x, cone, p);
    if (!(r > 0))
        throw std::domain_error("gpolar: point lies on the cone, no polar representation");
    PolarPoint out;
    out.r = r;
    out.angle.assign(x.begin(), x.end());
    for (double& v : out.angle) v /= r;
    return out;
}

std::pair<std::vector<double>, std::vector<double>> XiEta::compact() const {
    std::pair<std::vector<double>, std::vector<double>> out;
    out.first.reserve(xi.size() - excluded_count);
    out.second.reserve(xi.size() - excluded_count);
    for (std::size_t i = 0; i < xi.size(); ++i) {
        if (excluded[i]) continue;
        out.first.push_back(xi[i]);
        out.second.push_back(eta[i]);
    }
    return out;
}

XiEta xi_eta(const DegreeMatrix& d, double slope) {
    if (d.L != 2) throw std::invalid_argument("xi_eta: needs exactly two layers");
    if (!(slope > 0)) throw std::invalid_argument("xi_eta: slope must be > 0");
    XiEta out;
    out.xi.resize(d.n);
    out.eta.resize(d.n);
    out.excluded.assign(d.n, 0);
    for (std::size_t i = 0; i < d.n; ++i) {
        const auto d1 = static_cast<double>(d(i, 0));
        const auto d2 = static_cast<double>(d(i, 1));
        out.xi[i] = d2 - slope * d1;
        if (d1 > 0) {
            out.eta[i] = d2 / d1;
        } else if (d2 > 0) {
            out.eta[i] = std::numeric_limits<double>::infinity();
        } else {
            out.eta[i] = 0;
            out.excluded[i] = 1;
            ++out.excluded_count;
        }
    }
    return out;
}

namespace {

double phi(double z) {
    return std::exp(-0.5 * z * z) * 0.3989422804014326779399;  // 1/sqrt(2*pi)
}

double integrand(double z, double two_alpha) { return std::pow(z, two_alpha) * phi(z); }

double adaptive_simpson(double two_alpha, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = integrand(lm, two_alpha), frm = integrand(rm, two_alpha);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(two_alpha, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(two_alpha, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double simpson_on(double two_alpha, double a, double b, double tol) {
    const double fa = integrand(a, two_alpha);
    const double fb = integrand(b, two_alpha);
    const double m = 0.5 * (a + b);
    const double fm = integrand(m, two_alpha);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(two_alpha, a, b, fa, fm, fb, whole, tol, 40);
}

double integral_z2a_phi(double two_alpha, double upper) {
    // Unit panels keep the bump of z^{2a} phi(z) (peak at z = sqrt(2a), width
    // O(1)) from slipping between quadrature nodes; the tolerance is relative
    // to the closed-form untruncated integral 2^{a-1} Gamma(a+1/2) / sqrt(pi),
    // which grows factorially in a.
    const double full = std::pow(2.0, 0.5 * two_alpha - 1.0) *
                        std::tgamma(0.5 * (two_alpha + 1.0)) / std::sqrt(M_PI);
    const double tol = std::max(full, 1.0) * 1e-13;
    double sum = 0, lo = 0;
    while (lo < upper) {
        const double hi = std::min(std::floor(lo) + 1.0, upper);
        sum += simpson_on(two_alpha, lo, hi, tol);
        lo = hi;
    }
    return sum;
}

}  // namespace

double example31_limit(double u, double v, double alpha) {
    if (!(u > 0)) throw std::domain_error("example31_limit: u must be > 0");
    if (!(v >= 0)) throw std::domain_error("example31_limit: v must be >= 0");
    if (!(alpha > 0)) throw std::invalid_argument("example31_limit: alpha must be > 0");
    if (!(alpha <= 30))
        throw std::invalid_argument("example31_limit: alpha above 30 is not supported");

    // Past this point the integrand has decayed below the quadrature tolerance.
    const double z_cut = std::max(42.0, 8.0 * std::sqrt(alpha) + 20.0);
    const double upper = (v == 0) ? z_cut : std::min(1.0 / v, z_cut);
    const double integral = integral_z2a_phi(2.0 * alpha, upper);
    const double constant =
        std::pow(2.0, 1.0 - alpha) * std::sqrt(M_PI) / std::tgamma(alpha + 0.5);
    return std::pow(u, -2.0 * alpha) * constant * integral;
}

}  // namespace mirg
