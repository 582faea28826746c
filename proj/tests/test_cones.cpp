#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "mirg/cones.hpp"
#include "mirg/rng.hpp"

using namespace mirg;

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();

// independent ray-distance oracle: min over t >= 0 of |x - t*u| with u the
// unit direction of slope s, minimized at t* = max(0, <x, u>)
double ray_distance_oracle(double x1, double x2, double s) {
    const double norm = std::sqrt(1.0 + s * s);
    const double u1 = 1.0 / norm, u2 = s / norm;
    const double t = std::max(0.0, x1 * u1 + x2 * u2);
    const double d1 = x1 - t * u1, d2 = x2 - t * u2;
    return std::sqrt(d1 * d1 + d2 * d2);
}

double wedge_distance_oracle(double x1, double x2, double a, double b) {
    if (x1 > 0 && x2 / x1 >= a && x2 / x1 <= b) return 0.0;
    if (x1 == 0 && x2 == 0) return 0.0;
    return std::min(ray_distance_oracle(x1, x2, a), ray_distance_oracle(x1, x2, b));
}

}  // namespace

TEST_CASE("cone spec validation") {
    CHECK_THROWS_AS(ConeSpec::wedge(0.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(ConeSpec::wedge(1.5, 0.5), std::invalid_argument);
    CHECK(ConeSpec::wedge(0.5, 1.5).lower == 0.5);
}

TEST_CASE("distance to the origin cone is the norm") {
    const std::vector<double> x{3.0, 4.0};
    CHECK(distance_to_cone(x, ConeSpec::origin(), 2.0) == doctest::Approx(5.0));
    CHECK(distance_to_cone(x, ConeSpec::origin(), 1.0) == doctest::Approx(7.0));
    CHECK(distance_to_cone(x, ConeSpec::origin(), INF) == doctest::Approx(4.0));
}

TEST_CASE("distance to the diagonal ray") {
    const std::vector<double> on{2.0, 2.0};
    CHECK(distance_to_cone(on, ConeSpec::diagonal_ray(), 2.0) == doctest::Approx(0.0));
    const std::vector<double> off{0.0, 1.0};
    CHECK(distance_to_cone(off, ConeSpec::diagonal_ray(), 2.0) ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    // behind the vertex the nearest cone point is the origin
    const std::vector<double> behind{-3.0, -4.0};
    CHECK(distance_to_cone(behind, ConeSpec::diagonal_ray(), 2.0) ==
          doctest::Approx(5.0).epsilon(1e-14));

    CHECK_THROWS_AS(distance_to_cone(off, ConeSpec::diagonal_ray(), 1.0),
                    std::invalid_argument);  // only p = 2 supported
    const std::vector<double> x3{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(distance_to_cone(x3, ConeSpec::diagonal_ray(), 2.0), std::invalid_argument);
}

TEST_CASE("distance to a wedge") {
    const auto cone = ConeSpec::wedge(0.5, 1.5);
    // frozen: (0,1) lies above the upper ray, distance 1/sqrt(3.25)
    const std::vector<double> p1{0.0, 1.0};
    CHECK(distance_to_cone(p1, cone, 2.0) == doctest::Approx(0.5547001962252291).epsilon(1e-14));
    // inside
    const std::vector<double> p2{1.0, 1.0};
    CHECK(distance_to_cone(p2, cone, 2.0) == doctest::Approx(0.0));
    // below the lower ray
    const std::vector<double> p3{1.0, 0.2};
    CHECK(distance_to_cone(p3, cone, 2.0) ==
          doctest::Approx(0.3 / std::sqrt(1.25)).epsilon(1e-14));
}

TEST_CASE("wedge distances match the projection oracle on random points") {
    RngStream rng(51, 0);
    const auto cone = ConeSpec::wedge(0.4, 2.2);
    for (int t = 0; t < 2000; ++t) {
        const double x1 = 10.0 * rng.u01() - 2.0;  // include negatives
        const double x2 = 10.0 * rng.u01() - 2.0;
        const std::vector<double> x{x1, x2};
        const double got = distance_to_cone(x, cone, 2.0);
        CHECK(got == doctest::Approx(wedge_distance_oracle(x1, x2, 0.4, 2.2)).epsilon(1e-12));
    }
}

TEST_CASE("generalized polar coordinates") {
    const std::vector<double> x{0.0, 2.0};
    const auto pt = gpolar(x, ConeSpec::diagonal_ray(), 2.0);
    CHECK(pt.r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    REQUIRE(pt.angle.size() == 2);
    // the angular part sits at unit distance from the cone
    CHECK(distance_to_cone(pt.angle, ConeSpec::diagonal_ray(), 2.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pt.r * pt.angle[1] == doctest::Approx(2.0).epsilon(1e-14));

    const std::vector<double> on{3.0, 3.0};
    CHECK_THROWS_AS(gpolar(on, ConeSpec::diagonal_ray(), 2.0), std::domain_error);
}

TEST_CASE("xi eta coordinates of a degree matrix") {
    DegreeMatrix d;
    d.n = 4;
    d.L = 2;
    d.d = {2, 3, 0, 5, 0, 0, 4, 2};
    const auto c = xi_eta(d, 1.5);
    REQUIRE(c.xi.size() == 4);
    CHECK(c.xi[0] == doctest::Approx(0.0));  // 3 - 1.5*2
    CHECK(c.eta[0] == doctest::Approx(1.5));
    CHECK(c.xi[1] == doctest::Approx(5.0));
    CHECK(c.eta[1] == INF);
    CHECK(c.excluded[2] == 1);
    CHECK(c.excluded_count == 1);
    CHECK(c.eta[3] == doctest::Approx(0.5));

    const auto [xi, eta] = c.compact();
    REQUIRE(xi.size() == 3);
    CHECK(xi[0] == doctest::Approx(0.0));
    CHECK(xi[1] == doctest::Approx(5.0));
    CHECK(xi[2] == doctest::Approx(2.0 - 6.0));

    DegreeMatrix bad;
    bad.n = 1;
    bad.L = 3;
    bad.d = {1, 2, 3};
    CHECK_THROWS_AS(xi_eta(bad, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(xi_eta(d, 0.0), std::invalid_argument);
}

TEST_CASE("tail limit of the dependent example") {
    // v = 0 integrates the full half-line and cancels the constant exactly
    for (const double alpha : {0.6, 1.0, 1.4, 2.0})
        for (const double u : {1.0, 1.7, 3.0})
            CHECK(example31_limit(u, 0.0, alpha) ==
                  doctest::Approx(std::pow(u, -2.0 * alpha)).epsilon(1e-10));

    // frozen quadrature values, cross-checked against the closed form
    // u^{-2a} P(a + 1/2, 1/(2 v^2)) with P the regularized incomplete gamma
    CHECK(example31_limit(1.0, 0.5, 1.0) == doctest::Approx(0.7385358700508893).epsilon(1e-9));
    CHECK(example31_limit(1.5, 1.0, 1.0) == doctest::Approx(0.08833246359946627).epsilon(1e-9));
    CHECK(example31_limit(2.0, 0.5, 1.0) == doctest::Approx(0.18463396751272232).epsilon(1e-9));
    CHECK(example31_limit(1.3, 0.7, 1.4) == doctest::Approx(0.14423540390184827).epsilon(1e-9));
    CHECK(example31_limit(2.0, 1.0, 2.0) == doctest::Approx(0.0023396391720439755).epsilon(1e-9));
    CHECK(example31_limit(1.1, 0.25, 0.6) == doctest::Approx(0.8915343073828348).epsilon(1e-9));

    // monotone decreasing in both u and v
    CHECK(example31_limit(1.0, 0.5, 1.0) > example31_limit(1.2, 0.5, 1.0));
    CHECK(example31_limit(1.0, 0.5, 1.0) > example31_limit(1.0, 0.8, 1.0));

    CHECK_THROWS_AS(example31_limit(0.0, 0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(example31_limit(1.0, -0.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(example31_limit(1.0, 0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(example31_limit(1.0, 0.5, 31.0), std::invalid_argument);
}
