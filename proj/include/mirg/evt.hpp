#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mirg/graph.hpp"
#include "mirg/weights.hpp"

namespace mirg {

/* Tail-index estimation on row norms.
 *
 * hill computes H_{k,n} = (1/k) sum_{i<=k} log(X_(i) / X_(k+1)) over the
 * descending order statistics; 1/H estimates the tail index of a regularly
 * varying sample.
 *
 * hillish targets hidden regular variation of a pair (xi, eta): sort by xi
 * descending, take the eta values carried along (concomitants), and average
 * log(k/i) * log(k/N_i^k) where N_i^k ranks the i-th concomitant among the
 * first k (rank 1 = largest).  Under a product-form limit in both (xi, eta)
 * and (xi, -eta) the statistic tends to 1 along a k window; evaluating both
 * orientations is what hillish_pair does.
 */

struct RadiusVector {
    std::vector<double> values;
    double p = 1;  // the norm order used to build it
};

struct TailIndexEstimate {
    std::size_t k = 0;
    double hill = 0;
    std::optional<double> alpha_hat;  // 1/hill when hill > 0
};

struct HillishTrace {
    std::vector<std::size_t> ks;
    std::vector<double> values;
    bool negated_eta = false;  // true for the (xi, -eta) orientation
};

// Row p-norms; p >= 1 or infinity.
RadiusVector norms(const DegreeMatrix& d, double p);
RadiusVector norms(const WeightMatrix& w, double p);

TailIndexEstimate hill(std::span<const double> values, std::size_t k);
TailIndexEstimate hill(const RadiusVector& r, std::size_t k);

// ceil(n/t)-th largest value; t > 1.  Approximates the (1 - 1/t) quantile.
double empirical_quantile(std::span<const double> values, double t);

// (1/k) * #{ i : values[i] / scale > y }
double tail_empirical_measure(std::span<const double> values, std::size_t k, double scale,
                              double y);

// k_n = ceil(n^{1/alpha + kappa}) clamped to [1, n-1]; requires alpha > 1 and
// kappa strictly inside (0, (alpha-1)/alpha) so that k_n / n -> 0 while
// k_n n^{-1/alpha} -> infinity.
std::size_t select_kn(std::size_t n, double alpha, double kappa);

double hillish(std::span<const double> xi, std::span<const double> eta, std::size_t k);
std::pair<HillishTrace, HillishTrace> hillish_pair(std::span<const double> xi,
                                                   std::span<const double> eta,
                                                   const std::vector<std::size_t>& ks);

// CSV "k,hill,alpha_hat" (alpha_hat empty when hill <= 0).
void write_hill_csv(std::span<const TailIndexEstimate> rows, std::ostream& os);
// CSV "k,hillish_pos,hillish_neg".
void write_hillish_csv(const HillishTrace& pos, const HillishTrace& neg, std::ostream& os);

}  // namespace mirg
