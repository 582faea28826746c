#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "mirg/rng.hpp"

namespace mirg {

/* Verification oracles for the probabilistic bounds the fast generator and
 * the degree asymptotics rest on.  Each check produces a small report that
 * can be rendered as text or CSV.
 */

// One draw of (Bernoulli(p), Poisson(p)) under the optimal (maximal) coupling:
// both variables are read off a single shared uniform through their inverse
// CDFs, which meets the total-variation lower bound
//     P(B != N) = p (1 - e^{-p}).
struct CoupledPair {
    int bernoulli_draw;
    std::int64_t poisson_draw;
};
CoupledPair maximal_coupling(double p, RngStream& rng);  // requires 0 <= p < 1

struct MomentBoundRow {
    double lambda;
    double mc_estimate;  // Monte-Carlo E|X - lambda|^m
    double mc_se;
    double exact;        // closed-form central moment
    double bound;        // a_m lambda^{m/2} + C_m
    bool mc_within_3se;
    bool exact_within_bound;
};

struct MomentBoundReport {
    int m = 2;
    std::size_t samples = 0;
    double a_m = 0, C_m = 0;
    std::vector<MomentBoundRow> rows;
    bool all_hold() const;
};

// Central-moment envelope E|X - lambda|^m <= a_m lambda^{m/2} + C_m for
// Poisson X, checked with witnesses a_m = 3.5, C_m = 2 against both the
// closed forms (m=2: lambda; m=4: lambda + 3 lambda^2) and simulation.
// Only m in {2, 4} is supported in v1.
MomentBoundReport check_poisson_moment_bound(std::span<const double> lambda_grid, int m,
                                             std::size_t samples, RngStream& rng);

struct Pb3Report {
    std::size_t n = 0;
    double mean = 0;              // mu = sum p_i
    double moment = 0;            // E|S - mu|^3 from the exact pmf
    std::optional<double> enumerated;  // cross-check by 2^n enumeration when small
    double bound = 0;             // 2 mu + 2 mu^{3/2}
    bool holds = false;
};

// Third absolute central moment of a Bernoulli sum against 2 mu + 2 mu^{3/2}.
// Uses the exact Poisson-binomial pmf; inputs up to exhaustive_limit entries
// are additionally verified by full enumeration.
Pb3Report check_pb3_bound(std::span<const double> probs, std::size_t exhaustive_limit = 20);

void write_report_text(const MomentBoundReport& r, std::ostream& os);
void write_report_csv(const MomentBoundReport& r, std::ostream& os);
void write_report_text(std::span<const Pb3Report> rows, std::ostream& os);
void write_report_csv(std::span<const Pb3Report> rows, std::ostream& os);

// Coupling disagreement summary over a grid of p values.
struct CouplingRow {
    double p;
    std::size_t draws;
    double disagree_rate;   // empirical P(B != N)
    double exact;           // p (1 - e^{-p})
    double quadratic_cap;   // p^2, the envelope used by the generator analysis
    bool within_3se;
};
std::vector<CouplingRow> check_coupling(std::span<const double> p_grid, std::size_t draws,
                                        RngStream& rng);
void write_report_text(std::span<const CouplingRow> rows, std::ostream& os);
void write_report_csv(std::span<const CouplingRow> rows, std::ostream& os);

}  // namespace mirg
