#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mirg/dist.hpp"
#include "mirg/rng.hpp"

namespace mirg {

/* Heavy-tailed layer weights.
 *
 * A weight matrix holds one nonnegative weight per (node, layer).  The
 * built-in models factor each row into radius * angle with a Pareto radius,
 * which is what produces regular variation of the row norms:
 *
 *   hrv_mixture     L=2; fair mixture of a bulk component (Pareto(alpha)
 *                   radius, angle in the central band [0.4,0.6]) and a hidden
 *                   component (Pareto(alpha0) radius, angle in (0,0.4), i.e.
 *                   rows leaning toward the second coordinate).
 *   full_dependence L=2; both coordinates equal to a single Pareto(alpha) draw.
 *   single_factor   L=2; V*(Theta, 1-Theta) with V Pareto(alpha) and Theta
 *                   drawn from a configurable angle distribution.
 *   generic_polar   any L; radius from a DistSpec, angle from a user-supplied
 *                   simplex sampler.
 */

struct WeightMatrix {
    std::size_t n = 0, L = 0;
    std::vector<double> w;  // row-major n x L

    // per-row mixture component (0/1); filled only when the model spec asked
    // for component recording, empty otherwise
    std::vector<std::uint8_t> component;

    double operator()(std::size_t i, std::size_t l) const { return w[i * L + l]; }
    double& operator()(std::size_t i, std::size_t l) { return w[i * L + l]; }
    std::span<const double> row(std::size_t i) const { return {w.data() + i * L, L}; }

    std::vector<double> layer_totals() const;  // T_l = sum_i w_il
};

using SimplexSampler = std::function<void(RngStream&, std::span<double>)>;

struct WeightModelSpec {
    enum class Kind { hrv_mixture, full_dependence, single_factor, generic_polar };

    Kind kind = Kind::single_factor;
    double alpha = 1.5;   // radius tail index of the bulk component
    double alpha0 = 0;    // hidden-component tail index (hrv_mixture)
    DistSpec angle = DistSpec::shifted_beta(5, 5, 0.4, 0.6);  // single_factor
    DistSpec radius = DistSpec::pareto(1.5);                  // generic_polar
    SimplexSampler angle_sampler;                             // generic_polar
    std::size_t L = 2;
    bool record_components = false;  // debug: keep per-row mixture labels

    // Requires alpha0 >= alpha; the hidden tail may not dominate the bulk.
    static WeightModelSpec hrv_mixture(double alpha, double alpha0,
                                       bool record_components = false);
    static WeightModelSpec full_dependence(double alpha);
    static WeightModelSpec single_factor(double alpha,
                                         DistSpec angle = DistSpec::shifted_beta(5, 5, 0.4, 0.6));
    static WeightModelSpec generic_polar(DistSpec radius, SimplexSampler angle_sampler,
                                         std::size_t L);

    // hrv_mixture only: whether the hidden component sits in the detectable
    // band alpha0 in [alpha, 2*alpha).
    bool hidden_detectable() const;
};

WeightMatrix sample_weights(const WeightModelSpec& spec, std::size_t n, RngStream& rng);

// Entrywise w_il * c_l; c must have one entry per layer, all > 0.
WeightMatrix scaled_weights(const WeightMatrix& w, std::span<const double> c);

// CSV "node,w1,...,wL" with 1-based node ids; weights round-trip exactly.
void write_weights_csv(const WeightMatrix& w, std::ostream& os);
void write_weights_csv(const WeightMatrix& w, const std::string& path);
WeightMatrix read_weights_csv(std::istream& is);
WeightMatrix read_weights_csv(const std::string& path);

}  // namespace mirg
