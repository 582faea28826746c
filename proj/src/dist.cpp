#include "mirg/dist.hpp"

#include <cmath>
#include <stdexcept>

namespace mirg {

DistSpec DistSpec::pareto(double alpha) {
    if (!(alpha > 0))
        throw std::invalid_argument("pareto: alpha must be > 0");
    return {Kind::pareto, alpha, 0, 0, 0};
}

DistSpec DistSpec::shifted_beta(double b1, double b2, double c1, double c2) {
    if (!(b1 > 0) || !(b2 > 0))
        throw std::invalid_argument("shifted_beta: shape parameters must be > 0");
    if (!(c1 < c2))
        throw std::invalid_argument("shifted_beta: need c1 < c2");
    return {Kind::shifted_beta, b1, b2, c1, c2};
}

DistSpec DistSpec::uniform(double lo, double hi) {
    if (!(lo < hi))
        throw std::invalid_argument("uniform: need lo < hi");
    return {Kind::uniform, lo, hi, 0, 0};
}

DistSpec DistSpec::poisson(double lambda) {
    if (!(lambda >= 0))
        throw std::invalid_argument("poisson: lambda must be >= 0");
    return {Kind::poisson, lambda, 0, 0, 0};
}

DistSpec DistSpec::bernoulli(double p) {
    if (!(p >= 0 && p <= 1))
        throw std::invalid_argument("bernoulli: p must be in [0,1]");
    return {Kind::bernoulli, p, 0, 0, 0};
}

DistSpec DistSpec::std_normal() { return {Kind::std_normal, 0, 0, 0, 0}; }

std::string DistSpec::describe() const {
    char buf[128];
    switch (kind) {
        case Kind::pareto: std::snprintf(buf, sizeof buf, "pareto(%g)", a); break;
        case Kind::shifted_beta:
            std::snprintf(buf, sizeof buf, "shifted_beta(%g,%g,%g,%g)", a, b, c, d);
            break;
        case Kind::uniform: std::snprintf(buf, sizeof buf, "uniform(%g,%g)", a, b); break;
        case Kind::poisson: std::snprintf(buf, sizeof buf, "poisson(%g)", a); break;
        case Kind::bernoulli: std::snprintf(buf, sizeof buf, "bernoulli(%g)", a); break;
        case Kind::std_normal: return "std_normal";
    }
    return buf;
}

double pareto_icdf(double alpha, double u) {
    if (!(alpha > 0))
        throw std::invalid_argument("pareto_icdf: alpha must be > 0");
    if (!(u > 0 && u <= 1))
        throw std::invalid_argument("pareto_icdf: u must be in (0,1]");
    return std::pow(u, -1.0 / alpha);
}

double sample_pareto(double alpha, RngStream& rng) {
    return pareto_icdf(alpha, rng.u01_pos());
}

double sample_std_normal(RngStream& rng) {
    // Box-Muller; the sine mate is discarded to keep one-draw-per-call semantics.
    const double u1 = rng.u01_pos();
    const double u2 = rng.u01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925 * u2);
}

double sample_gamma(double shape, RngStream& rng) {
    if (!(shape > 0))
        throw std::invalid_argument("sample_gamma: shape must be > 0");
    if (shape < 1.0) {
        // boost to shape+1, then scale back (Marsaglia-Tsang, section on a < 1)
        const double x = sample_gamma(shape + 1.0, rng);
        return x * std::pow(rng.u01_pos(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = sample_std_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.u01_pos();
        if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample_beta(double b1, double b2, RngStream& rng) {
    const double g1 = sample_gamma(b1, rng);
    const double g2 = sample_gamma(b2, rng);
    return g1 / (g1 + g2);
}

std::int64_t sample_poisson(double lambda, RngStream& rng) {
    if (!(lambda >= 0))
        throw std::invalid_argument("sample_poisson: lambda must be >= 0");
    if (lambda == 0) return 0;
    if (lambda < 10.0) {
        // CDF inversion by upward search
        const double u = rng.u01();
        double term = std::exp(-lambda);
        double cum = term;
        std::int64_t k = 0;
        while (u > cum) {
            ++k;
            term *= lambda / static_cast<double>(k);
            cum += term;
            if (k > 2000) break;  // u ~ 1 and fp saturation; cum == 1 by here
        }
        return k;
    }
    // PTRS transformed rejection (valid for lambda >= 10)
    const double b = 0.931 + 2.53 * std::sqrt(lambda);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_lambda = std::log(lambda);
    for (;;) {
        const double u = rng.u01() - 0.5;
        const double v = rng.u01_pos();
        const double us = 0.5 - std::fabs(u);
        const double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(k);
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            k * log_lambda - lambda - std::lgamma(k + 1.0))
            return static_cast<std::int64_t>(k);
    }
}

double sample_one(const DistSpec& spec, RngStream& rng) {
    switch (spec.kind) {
        case DistSpec::Kind::pareto:
            return sample_pareto(spec.a, rng);
        case DistSpec::Kind::shifted_beta:
            return spec.c + (spec.d - spec.c) * sample_beta(spec.a, spec.b, rng);
        case DistSpec::Kind::uniform:
            return spec.a + (spec.b - spec.a) * rng.u01();
        case DistSpec::Kind::poisson:
            return static_cast<double>(sample_poisson(spec.a, rng));
        case DistSpec::Kind::bernoulli:
            return rng.u01() < spec.a ? 1.0 : 0.0;
        case DistSpec::Kind::std_normal:
            return sample_std_normal(rng);
    }
    throw std::logic_error("sample_one: unreachable");
}

std::vector<double> sample(const DistSpec& spec, std::size_t n, RngStream& rng) {
    std::vector<double> out(n);
    for (auto& x : out) x = sample_one(spec, rng);
    return out;
}

std::vector<double> poisson_binomial_pmf(std::span<const double> probs) {
    for (double p : probs)
        if (!(p >= 0 && p <= 1))
            throw std::invalid_argument("poisson_binomial_pmf: probabilities must be in [0,1]");
    std::vector<double> pmf(probs.size() + 1, 0.0);
    pmf[0] = 1.0;
    std::size_t used = 0;
    for (double p : probs) {
        ++used;
        for (std::size_t k = used; k-- > 0;) {
            pmf[k + 1] += pmf[k] * p;
            pmf[k] *= (1.0 - p);
        }
    }
    return pmf;
}

}  // namespace mirg
