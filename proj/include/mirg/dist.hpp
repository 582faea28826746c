#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mirg/rng.hpp"

namespace mirg {

/* Scalar distributions used throughout the toolkit.
 *
 * All sampling goes through explicit algorithms (inverse CDF, Box-Muller,
 * Marsaglia-Tsang, Poisson inversion / PTRS rejection) so that a given
 * RngStream always yields the same draws, independent of the C++ runtime.
 */

struct DistSpec {
    enum class Kind { pareto, shifted_beta, uniform, poisson, bernoulli, std_normal };

    Kind kind = Kind::std_normal;
    double a = 0, b = 0, c = 0, d = 0;  // meaning depends on kind

    // Pareto(alpha): P(X > x) = x^{-alpha}, x >= 1.  Requires alpha > 0.
    static DistSpec pareto(double alpha);
    // (c2-c1)*Beta(b1,b2) + c1.  Requires b1,b2 > 0 and c1 < c2.
    static DistSpec shifted_beta(double b1, double b2, double c1, double c2);
    static DistSpec uniform(double lo, double hi);  // requires lo < hi
    static DistSpec poisson(double lambda);         // requires lambda >= 0
    static DistSpec bernoulli(double p);            // requires p in [0,1]
    static DistSpec std_normal();

    std::string describe() const;
};

// x = u^{-1/alpha} for u in (0,1]; the tail-probability inverse of Pareto(alpha).
double pareto_icdf(double alpha, double u);

double sample_one(const DistSpec& spec, RngStream& rng);
std::vector<double> sample(const DistSpec& spec, std::size_t n, RngStream& rng);

// Direct samplers (the DistSpec path dispatches to these).
double sample_pareto(double alpha, RngStream& rng);
double sample_std_normal(RngStream& rng);
double sample_gamma(double shape, RngStream& rng);  // unit scale, shape > 0
double sample_beta(double b1, double b2, RngStream& rng);
// Inversion for lambda < 10, PTRS transformed rejection above.
std::int64_t sample_poisson(double lambda, RngStream& rng);

// Exact pmf of sum of independent Bernoulli(p_i) on {0,...,n} by convolution.
// Entries are nonnegative and sum to 1 up to accumulated rounding.
std::vector<double> poisson_binomial_pmf(std::span<const double> probs);

}  // namespace mirg
