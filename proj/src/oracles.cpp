#include "mirg/oracles.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "mirg/dist.hpp"

namespace mirg {

CoupledPair maximal_coupling(double p, RngStream& rng) {
    if (!(p >= 0 && p < 1))
        throw std::invalid_argument("maximal_coupling: p must lie in [0,1)");
    const double u = rng.u01();
    CoupledPair out;
    out.bernoulli_draw = (u >= 1.0 - p) ? 1 : 0;
    // Poisson inverse CDF at the same uniform.
    double term = std::exp(-p);
    double cum = term;
    std::int64_t k = 0;
    while (u >= cum) {
        ++k;
        term *= p / static_cast<double>(k);
        cum += term;
        if (k > 500) break;  // cum has saturated at 1 numerically
    }
    out.poisson_draw = k;
    return out;
}

bool MomentBoundReport::all_hold() const {
    for (const auto& r : rows)
        if (!r.mc_within_3se || !r.exact_within_bound) return false;
    return true;
}

MomentBoundReport check_poisson_moment_bound(std::span<const double> lambda_grid, int m,
                                             std::size_t samples, RngStream& rng) {
    if (m != 2 && m != 4)
        throw std::invalid_argument(
            "check_poisson_moment_bound: only m in {2,4} supported in v1");
    if (samples < 2)
        throw std::invalid_argument("check_poisson_moment_bound: need at least 2 samples");
    MomentBoundReport rep;
    rep.m = m;
    rep.samples = samples;
    rep.a_m = 3.5;
    rep.C_m = 2.0;
    for (double lam : lambda_grid) {
        if (!(lam >= 0))
            throw std::invalid_argument("check_poisson_moment_bound: lambda must be >= 0");
        double acc = 0, acc2 = 0;
        for (std::size_t s = 0; s < samples; ++s) {
            const double x = static_cast<double>(sample_poisson(lam, rng));
            const double d = std::fabs(x - lam);
            const double v = (m == 2) ? d * d : d * d * d * d;
            acc += v;
            acc2 += v * v;
        }
        const double mc = acc / static_cast<double>(samples);
        const double var = std::max(0.0, acc2 / static_cast<double>(samples) - mc * mc);
        const double se = std::sqrt(var / static_cast<double>(samples));
        const double exact = (m == 2) ? lam : lam + 3.0 * lam * lam;
        const double bound = rep.a_m * std::pow(lam, m / 2.0) + rep.C_m;
        MomentBoundRow row;
        row.lambda = lam;
        row.mc_estimate = mc;
        row.mc_se = se;
        row.exact = exact;
        row.bound = bound;
        row.mc_within_3se = std::fabs(mc - exact) <= 3.0 * se + 1e-12;
        row.exact_within_bound = exact <= bound;
        rep.rows.push_back(row);
    }
    return rep;
}

Pb3Report check_pb3_bound(std::span<const double> probs, std::size_t exhaustive_limit) {
    for (double p : probs)
        if (!(p >= 0 && p <= 1))
            throw std::invalid_argument("check_pb3_bound: probabilities must be in [0,1]");
    Pb3Report rep;
    rep.n = probs.size();
    double mu = 0;
    for (double p : probs) mu += p;
    rep.mean = mu;

    const std::vector<double> pmf = poisson_binomial_pmf(probs);
    double m3 = 0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        const double d = std::fabs(static_cast<double>(k) - mu);
        m3 += pmf[k] * d * d * d;
    }
    rep.moment = m3;

    if (probs.size() <= exhaustive_limit && !probs.empty()) {
        double acc = 0;
        const std::size_t combos = std::size_t{1} << probs.size();
        for (std::size_t mask = 0; mask < combos; ++mask) {
            double prob = 1;
            int sum = 0;
            for (std::size_t i = 0; i < probs.size(); ++i) {
                if (mask & (std::size_t{1} << i)) {
                    prob *= probs[i];
                    ++sum;
                } else {
                    prob *= 1.0 - probs[i];
                }
            }
            const double d = std::fabs(sum - mu);
            acc += prob * d * d * d;
        }
        rep.enumerated = acc;
    }

    rep.bound = 2.0 * mu + 2.0 * std::pow(mu, 1.5);
    rep.holds = rep.moment <= rep.bound + 1e-12;
    return rep;
}

std::vector<CouplingRow> check_coupling(std::span<const double> p_grid, std::size_t draws,
                                        RngStream& rng) {
    if (draws < 2) throw std::invalid_argument("check_coupling: need at least 2 draws");
    std::vector<CouplingRow> rows;
    for (double p : p_grid) {
        std::size_t disagree = 0;
        for (std::size_t s = 0; s < draws; ++s) {
            const CoupledPair c = maximal_coupling(p, rng);
            if (c.poisson_draw != c.bernoulli_draw) ++disagree;
        }
        CouplingRow row;
        row.p = p;
        row.draws = draws;
        row.disagree_rate = static_cast<double>(disagree) / static_cast<double>(draws);
        row.exact = p * (1.0 - std::exp(-p));
        row.quadratic_cap = p * p;
        const double se = std::sqrt(row.exact * (1.0 - row.exact) / static_cast<double>(draws));
        row.within_3se = std::fabs(row.disagree_rate - row.exact) <= 3.0 * se + 1e-12;
        rows.push_back(row);
    }
    return rows;
}

namespace {
void put(std::ostream& os, double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    os << buf;
}
}  // namespace

void write_report_text(const MomentBoundReport& r, std::ostream& os) {
    os << "Poisson central-moment envelope, m=" << r.m << ", witnesses a=" << r.a_m
       << " C=" << r.C_m << ", " << r.samples << " samples per point\n";
    for (const auto& row : r.rows) {
        os << "  lambda=";
        put(os, row.lambda);
        os << "  mc=";
        put(os, row.mc_estimate);
        os << " (se ";
        put(os, row.mc_se);
        os << ")  exact=";
        put(os, row.exact);
        os << "  bound=";
        put(os, row.bound);
        os << "  " << (row.mc_within_3se && row.exact_within_bound ? "ok" : "VIOLATED") << "\n";
    }
    os << (r.all_hold() ? "all points hold\n" : "SOME POINTS VIOLATED\n");
}

void write_report_csv(const MomentBoundReport& r, std::ostream& os) {
    os << "lambda,m,mc_estimate,mc_se,exact,bound,holds\n";
    for (const auto& row : r.rows) {
        put(os, row.lambda);
        os << ',' << r.m << ',';
        put(os, row.mc_estimate);
        os << ',';
        put(os, row.mc_se);
        os << ',';
        put(os, row.exact);
        os << ',';
        put(os, row.bound);
        os << ',' << ((row.mc_within_3se && row.exact_within_bound) ? 1 : 0) << "\n";
    }
}

void write_report_text(std::span<const Pb3Report> rows, std::ostream& os) {
    os << "Bernoulli-sum third absolute central moment vs 2*mu + 2*mu^(3/2)\n";
    for (const auto& r : rows) {
        os << "  n=" << r.n << "  mu=";
        put(os, r.mean);
        os << "  moment=";
        put(os, r.moment);
        if (r.enumerated) {
            os << " (enumerated ";
            put(os, *r.enumerated);
            os << ")";
        }
        os << "  bound=";
        put(os, r.bound);
        os << "  " << (r.holds ? "ok" : "VIOLATED") << "\n";
    }
}

void write_report_csv(std::span<const Pb3Report> rows, std::ostream& os) {
    os << "n,mean,moment,enumerated,bound,holds\n";
    for (const auto& r : rows) {
        os << r.n << ',';
        put(os, r.mean);
        os << ',';
        put(os, r.moment);
        os << ',';
        if (r.enumerated) put(os, *r.enumerated);
        os << ',';
        put(os, r.bound);
        os << ',' << (r.holds ? 1 : 0) << "\n";
    }
}

void write_report_text(std::span<const CouplingRow> rows, std::ostream& os) {
    os << "Bernoulli/Poisson maximal coupling disagreement\n";
    for (const auto& r : rows) {
        os << "  p=";
        put(os, r.p);
        os << "  rate=";
        put(os, r.disagree_rate);
        os << "  exact=";
        put(os, r.exact);
        os << "  p^2=";
        put(os, r.quadratic_cap);
        os << "  " << (r.within_3se ? "ok" : "VIOLATED") << "\n";
    }
}

void write_report_csv(std::span<const CouplingRow> rows, std::ostream& os) {
    os << "p,draws,disagree_rate,exact,quadratic_cap,holds\n";
    for (const auto& r : rows) {
        put(os, r.p);
        os << ',' << r.draws << ',';
        put(os, r.disagree_rate);
        os << ',';
        put(os, r.exact);
        os << ',';
        put(os, r.quadratic_cap);
        os << ',' << (r.within_3se ? 1 : 0) << "\n";
    }
}

}  // namespace mirg
