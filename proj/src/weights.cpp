#include "mirg/weights.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mirg {

std::vector<double> WeightMatrix::layer_totals() const {
    std::vector<double> t(L, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < L; ++l) t[l] += (*this)(i, l);
    return t;
}

WeightModelSpec WeightModelSpec::hrv_mixture(double alpha, double alpha0,
                                             bool record_components) {
    if (!(alpha > 0) || !(alpha0 > 0))
        throw std::invalid_argument("hrv_mixture: tail indices must be > 0");
    if (!(alpha0 >= alpha))
        throw std::invalid_argument(
            "hrv_mixture: need alpha0 >= alpha (hidden tail no heavier than bulk)");
    WeightModelSpec s;
    s.kind = Kind::hrv_mixture;
    s.alpha = alpha;
    s.alpha0 = alpha0;
    s.L = 2;
    s.record_components = record_components;
    return s;
}

WeightModelSpec WeightModelSpec::full_dependence(double alpha) {
    if (!(alpha > 0))
        throw std::invalid_argument("full_dependence: alpha must be > 0");
    WeightModelSpec s;
    s.kind = Kind::full_dependence;
    s.alpha = alpha;
    s.L = 2;
    return s;
}

WeightModelSpec WeightModelSpec::single_factor(double alpha, DistSpec angle) {
    if (!(alpha > 0))
        throw std::invalid_argument("single_factor: alpha must be > 0");
    WeightModelSpec s;
    s.kind = Kind::single_factor;
    s.alpha = alpha;
    s.angle = angle;
    s.L = 2;
    return s;
}

WeightModelSpec WeightModelSpec::generic_polar(DistSpec radius, SimplexSampler angle_sampler,
                                               std::size_t L) {
    if (L == 0) throw std::invalid_argument("generic_polar: L must be >= 1");
    if (!angle_sampler)
        throw std::invalid_argument("generic_polar: angle sampler required");
    WeightModelSpec s;
    s.kind = Kind::generic_polar;
    s.radius = radius;
    s.angle_sampler = std::move(angle_sampler);
    s.L = L;
    return s;
}

bool WeightModelSpec::hidden_detectable() const {
    if (kind != Kind::hrv_mixture)
        throw std::logic_error("hidden_detectable: only meaningful for hrv_mixture");
    return alpha0 < 2.0 * alpha;
}

WeightMatrix sample_weights(const WeightModelSpec& spec, std::size_t n, RngStream& rng) {
    WeightMatrix m;
    m.n = n;
    m.L = spec.L;
    m.w.assign(n * spec.L, 0.0);

    switch (spec.kind) {
        case WeightModelSpec::Kind::hrv_mixture: {
            if (spec.record_components) m.component.assign(n, 0);
            const DistSpec central = DistSpec::shifted_beta(5, 5, 0.4, 0.6);
            for (std::size_t i = 0; i < n; ++i) {
                if (rng.u01() < 0.5) {
                    const double v = sample_pareto(spec.alpha, rng);
                    const double th = sample_one(central, rng);
                    m(i, 0) = v * th;
                    m(i, 1) = v * (1.0 - th);
                } else {
                    const double v = sample_pareto(spec.alpha0, rng);
                    const double th = 0.4 * rng.u01();  // uniform(0, 0.4)
                    m(i, 0) = v * th;
                    m(i, 1) = v * (1.0 - th);
                    if (spec.record_components) m.component[i] = 1;
                }
            }
            break;
        }
        case WeightModelSpec::Kind::full_dependence: {
            for (std::size_t i = 0; i < n; ++i) {
                const double v = sample_pareto(spec.alpha, rng);
                m(i, 0) = v;
                m(i, 1) = v;
            }
            break;
        }
        case WeightModelSpec::Kind::single_factor: {
            for (std::size_t i = 0; i < n; ++i) {
                const double v = sample_pareto(spec.alpha, rng);
                const double th = sample_one(spec.angle, rng);
                if (!(th >= 0.0 && th <= 1.0))
                    throw std::domain_error("single_factor: angle draw outside [0,1]");
                m(i, 0) = v * th;
                m(i, 1) = v * (1.0 - th);
            }
            break;
        }
        case WeightModelSpec::Kind::generic_polar: {
            std::vector<double> angle(spec.L);
            for (std::size_t i = 0; i < n; ++i) {
                const double r = sample_one(spec.radius, rng);
                if (!(r >= 0))
                    throw std::domain_error("generic_polar: negative radius draw");
                spec.angle_sampler(rng, angle);
                double s = 0.0;
                for (double a : angle) {
                    if (!(a >= 0))
                        throw std::domain_error("generic_polar: angle outside the simplex");
                    s += a;
                }
                if (std::fabs(s - 1.0) > 1e-9)
                    throw std::domain_error("generic_polar: angle coordinates must sum to 1");
                for (std::size_t l = 0; l < spec.L; ++l) m(i, l) = r * angle[l];
            }
            break;
        }
    }
    return m;
}

WeightMatrix scaled_weights(const WeightMatrix& w, std::span<const double> c) {
    if (c.size() != w.L)
        throw std::invalid_argument("scaled_weights: need one scale per layer");
    for (double x : c)
        if (!(x > 0)) throw std::invalid_argument("scaled_weights: scales must be > 0");
    WeightMatrix out = w;
    for (std::size_t i = 0; i < w.n; ++i)
        for (std::size_t l = 0; l < w.L; ++l) out(i, l) = w(i, l) * c[l];
    return out;
}

void write_weights_csv(const WeightMatrix& w, std::ostream& os) {
    os << "node";
    for (std::size_t l = 1; l <= w.L; ++l) os << ",w" << l;
    os << "\n";
    char buf[40];
    for (std::size_t i = 0; i < w.n; ++i) {
        os << (i + 1);
        for (std::size_t l = 0; l < w.L; ++l) {
            std::snprintf(buf, sizeof buf, "%.17g", w(i, l));
            os << ',' << buf;
        }
        os << "\n";
    }
}

void write_weights_csv(const WeightMatrix& w, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_weights_csv(w, os);
    if (!os.good()) throw std::runtime_error("write failed: " + path);
}

WeightMatrix read_weights_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("weights csv: empty input");
    std::size_t L = 0;
    for (char ch : line)
        if (ch == ',') ++L;
    if (L == 0 || line.rfind("node", 0) != 0)
        throw std::runtime_error("weights csv: bad header");

    WeightMatrix m;
    m.L = L;
    std::size_t expect = 1;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        if (!std::getline(ls, field, ',')) break;
        const std::size_t node = std::stoull(field);
        if (node != expect)
            throw std::runtime_error("weights csv: node ids must be 1-based and consecutive");
        ++expect;
        for (std::size_t l = 0; l < L; ++l) {
            if (!std::getline(ls, field, ','))
                throw std::runtime_error("weights csv: short row");
            const double x = std::stod(field);
            if (!(x >= 0)) throw std::runtime_error("weights csv: negative weight");
            m.w.push_back(x);
        }
    }
    m.n = m.w.size() / L;
    return m;
}

WeightMatrix read_weights_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return read_weights_csv(is);
}

}  // namespace mirg
