#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mirg/evt.hpp"
#include "mirg/graph.hpp"
#include "mirg/weights.hpp"

namespace mirg {

/* Experiment harness.
 *
 * Four canned studies, each deterministic given (config, seed) and
 * independent of the worker count (every replicate/chunk owns a derived RNG
 * stream and a preallocated result slot; aggregation runs in index order):
 *
 *   table1     bias/MSE of the Hill tail-index estimate of degree row norms
 *              across k, on single-factor weights
 *   hrv        Hillish traces (both orientations) on wedge coordinates of a
 *              two-layer graph with a hidden second-layer component
 *   lemma      joint degree pmf of a finite graph against the limiting
 *              mixed-Poisson law
 *   example31  fully dependent two-layer check: scaled tail probabilities
 *              against the closed-form limit, plus the Hill index of the
 *              coordinate gap
 */

enum class ExperimentKind { table1, hrv, lemma, example31 };

const char* experiment_name(ExperimentKind k);
ExperimentKind parse_experiment(const std::string& name);

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::table1;
    std::size_t n = 0;
    std::size_t replicates = 0;
    double alpha = 1.4;
    std::optional<double> alpha0;
    std::vector<std::size_t> k_list;
    std::optional<double> kappa;  // alternative to k_list via select_kn
    std::vector<LayerSpec> layers;
    double p = 1;  // norm order
    std::uint64_t seed = 1;
    std::size_t parallelism = 1;
    std::string output_dir = ".";

    // Desk-scale defaults; paper_scale escalates n/replicates/k grids.
    static ExperimentConfig defaults(ExperimentKind kind, bool paper_scale = false);

    // Resolve k_list (possibly via kappa) and validate field combinations.
    void finalize();
};

// "key = value" lines; '#' comments; keys mirror ExperimentConfig fields.
// Unknown keys are rejected.  Values given in `base` are overridden.
ExperimentConfig load_config(std::istream& is, ExperimentConfig base);
ExperimentConfig load_config(const std::string& path, ExperimentConfig base);

struct SummaryTable {
    std::string name;

    struct HillRow {
        double alpha;
        std::size_t k;
        double bias;
        double mse;
        std::size_t replicates;  // completed (dropped ones excluded)
    };
    struct BandRow {
        std::string trace;  // "pos" | "neg"
        std::size_t k;
        double mean, p10, p25, p75, p90;
    };

    std::vector<HillRow> hill_rows;
    std::vector<BandRow> band_rows;
    std::size_t dropped_replicates = 0;  // failed the Hill precondition
    std::size_t excluded_rows = 0;       // zero-degree rows removed before Hillish
    std::vector<std::string> notes;
};

struct LemmaCell {
    int m1, m2;
    double p_graph, p_asym, diff, se;  // se combines both sides
};

struct LemmaReport {
    std::size_t n = 0;
    std::size_t graph_samples = 0, asym_samples = 0;
    std::vector<LemmaCell> cells;  // 6x6 grid in row-major (m1, m2) order
    double max_diff = 0;
    double max_ratio = 0;  // max over cells of |diff| / se
};

struct Example31Row {
    double u, v;
    double mc;     // t * empirical P(scaled distance > u, ratio > v)
    double se;     // t * binomial se
    double limit;  // closed form
};

struct Example31Report {
    std::size_t n = 0;
    double t = 0;
    double b0 = 0;           // empirical (1 - 1/t) quantile of sqrt(W)
    double norm_factor = 0;  // (sqrt(pi)/Gamma(alpha+1/2))^(1/(2 alpha))
    std::vector<Example31Row> rows;
    std::vector<TailIndexEstimate> hill_rows;  // Hill of |D1 - D2| at each k
    double target_index = 0;                   // 2 alpha
};

SummaryTable run_table1(const ExperimentConfig& cfg);
SummaryTable run_hrv_figure(const ExperimentConfig& cfg);
LemmaReport run_lemma_degree(const ExperimentConfig& cfg);
Example31Report run_example31(const ExperimentConfig& cfg);

// Writes <name>.csv plus one SVG per trace family into dir; returns the paths.
// CSV rows are key-sorted with numbers at 6 significant digits.
std::vector<std::string> emit_outputs(const SummaryTable& table, const std::string& dir);
std::vector<std::string> emit_outputs(const LemmaReport& rep, const std::string& dir);
std::vector<std::string> emit_outputs(const Example31Report& rep, const std::string& dir);

}  // namespace mirg
