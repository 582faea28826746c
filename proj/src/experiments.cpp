#include "mirg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "mirg/cones.hpp"
#include "mirg/dist.hpp"
#include "mirg/parallel.hpp"
#include "mirg/svg.hpp"

namespace mirg {

namespace {

constexpr double NaN = std::numeric_limits<double>::quiet_NaN();

std::string g6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// q-quantile as the ceil(q*R)-th smallest of an already-sorted sample
double quantile_sorted(const std::vector<double>& sorted, double q) {
    const auto r = static_cast<double>(sorted.size());
    auto idx = static_cast<std::size_t>(std::ceil(q * r));
    idx = std::min(std::max<std::size_t>(idx, 1), sorted.size());
    return sorted[idx - 1];
}

double mean_of(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

std::ofstream open_out(const std::string& dir, const std::string& file, std::string& path_out) {
    std::filesystem::create_directories(dir);
    path_out = (std::filesystem::path(dir) / file).string();
    std::ofstream os(path_out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path_out);
    return os;
}

std::vector<double> layer_slopes(const std::vector<LayerSpec>& layers) {
    std::vector<double> c;
    c.reserve(layers.size());
    for (const auto& l : layers) c.push_back(l.g.slope());
    return c;
}

}  // namespace

SummaryTable run_table1(const ExperimentConfig& cfg_in) {
    ExperimentConfig cfg = cfg_in;
    cfg.finalize();

    const std::size_t R = cfg.replicates;
    const std::size_t K = cfg.k_list.size();
    // slot[r*K + j] = alpha_hat of replicate r at k_list[j], NaN when dropped
    std::vector<double> slots(R * K, NaN);

    const std::uint64_t tag = hash_tag("table1");
    const WeightModelSpec wspec = WeightModelSpec::single_factor(cfg.alpha);

    parallel_for(R, cfg.parallelism, [&](std::size_t r) {
        RngStream rng(cfg.seed, combine_tags(tag, r));
        const WeightMatrix w = sample_weights(wspec, cfg.n, rng);
        const MultilayerGraph g = generate_fast(w, cfg.layers, rng);
        const DegreeMatrix deg = degrees(g);
        const RadiusVector radius = norms(deg, cfg.p);
        for (std::size_t j = 0; j < K; ++j) {
            try {
                const TailIndexEstimate est = hill(radius, cfg.k_list[j]);
                if (est.alpha_hat) slots[r * K + j] = *est.alpha_hat;
            } catch (const std::exception&) {
                // precondition failure (k out of range / degenerate tail): drop
            }
        }
    });

    SummaryTable table;
    table.name = "table1";
    for (std::size_t j = 0; j < K; ++j) {
        double sum = 0, sq = 0;
        std::size_t done = 0;
        for (std::size_t r = 0; r < R; ++r) {
            const double a = slots[r * K + j];
            if (std::isnan(a)) continue;
            sum += a - cfg.alpha;
            sq += (a - cfg.alpha) * (a - cfg.alpha);
            ++done;
        }
        SummaryTable::HillRow row;
        row.alpha = cfg.alpha;
        row.k = cfg.k_list[j];
        row.replicates = done;
        row.bias = done ? sum / static_cast<double>(done) : NaN;
        row.mse = done ? sq / static_cast<double>(done) : NaN;
        table.hill_rows.push_back(row);
        table.dropped_replicates += R - done;
    }
    if (!(cfg.alpha > 1))
        table.notes.push_back(
            "alpha <= 1 is outside the consistency regime; rows are exploratory");
    return table;
}

SummaryTable run_hrv_figure(const ExperimentConfig& cfg_in) {
    ExperimentConfig cfg = cfg_in;
    cfg.finalize();
    if (!cfg.alpha0) throw std::invalid_argument("run_hrv_figure: alpha0 required");

    const std::size_t R = cfg.replicates;
    const std::size_t K = cfg.k_list.size();
    std::vector<double> pos_slots(R * K, NaN), neg_slots(R * K, NaN);
    std::vector<std::size_t> excluded(R, 0);

    const std::uint64_t tag = hash_tag("hrv");
    const WeightModelSpec wspec = WeightModelSpec::hrv_mixture(cfg.alpha, *cfg.alpha0);

    parallel_for(R, cfg.parallelism, [&](std::size_t r) {
        RngStream rng(cfg.seed, combine_tags(tag, r));
        const WeightMatrix w = sample_weights(wspec, cfg.n, rng);
        const MultilayerGraph g = generate_fast(w, cfg.layers, rng);
        const DegreeMatrix deg = degrees(g);
        const XiEta coords = xi_eta(deg, 1.5);
        excluded[r] = coords.excluded_count;
        const auto [xi, eta] = coords.compact();
        const auto [pos, neg] = hillish_pair(xi, eta, cfg.k_list);
        for (std::size_t j = 0; j < K; ++j) {
            pos_slots[r * K + j] = pos.values[j];
            neg_slots[r * K + j] = neg.values[j];
        }
    });

    SummaryTable table;
    table.name = "hrv";
    auto summarize = [&](const std::vector<double>& slots, const std::string& trace) {
        for (std::size_t j = 0; j < K; ++j) {
            std::vector<double> col(R);
            for (std::size_t r = 0; r < R; ++r) col[r] = slots[r * K + j];
            std::sort(col.begin(), col.end());
            SummaryTable::BandRow row;
            row.trace = trace;
            row.k = cfg.k_list[j];
            row.mean = mean_of(col);
            row.p10 = quantile_sorted(col, 0.10);
            row.p25 = quantile_sorted(col, 0.25);
            row.p75 = quantile_sorted(col, 0.75);
            row.p90 = quantile_sorted(col, 0.90);
            table.band_rows.push_back(row);
        }
    };
    summarize(pos_slots, "pos");
    summarize(neg_slots, "neg");
    for (std::size_t r = 0; r < R; ++r) table.excluded_rows += excluded[r];
    table.notes.push_back("wedge slope 1.5; zero-degree rows excluded per replicate: mean " +
                          g6(static_cast<double>(table.excluded_rows) / static_cast<double>(R)));
    return table;
}

LemmaReport run_lemma_degree(const ExperimentConfig& cfg_in) {
    ExperimentConfig cfg = cfg_in;
    cfg.finalize();
    if (cfg.layers.size() != 2)
        throw std::invalid_argument("run_lemma_degree: exactly two layers expected");

    constexpr int GRID = 6;  // joint pmf on {0..5}^2
    const std::size_t G = (cfg.replicates + cfg.n - 1) / cfg.n;  // graphs on the finite side
    const std::size_t asym_rows = cfg.replicates;
    const WeightModelSpec wspec = WeightModelSpec::single_factor(cfg.alpha);
    const std::vector<double> slopes = layer_slopes(cfg.layers);

    // finite-graph side: per-graph cell frequencies
    std::vector<double> graph_freq(G * GRID * GRID, 0.0);
    const std::uint64_t gtag = hash_tag("lemma_graph");
    parallel_for(G, cfg.parallelism, [&](std::size_t gi) {
        RngStream rng(cfg.seed, combine_tags(gtag, gi));
        const WeightMatrix w = sample_weights(wspec, cfg.n, rng);
        const MultilayerGraph g = generate_fast(w, cfg.layers, rng);
        const DegreeMatrix deg = degrees(g);
        double* freq = &graph_freq[gi * GRID * GRID];
        for (std::size_t i = 0; i < deg.n; ++i) {
            const auto d1 = deg(i, 0);
            const auto d2 = deg(i, 1);
            if (d1 < GRID && d2 < GRID) freq[d1 * GRID + d2] += 1.0;
        }
        for (int c = 0; c < GRID * GRID; ++c) freq[c] /= static_cast<double>(deg.n);
    });

    // limit side: fresh weight rows pushed through the mixed-Poisson law
    constexpr std::size_t CHUNK = 8192;
    const std::size_t n_chunks = (asym_rows + CHUNK - 1) / CHUNK;
    std::vector<double> asym_counts(n_chunks * GRID * GRID, 0.0);
    const std::uint64_t atag = hash_tag("lemma_asym");
    parallel_for(n_chunks, cfg.parallelism, [&](std::size_t ci) {
        RngStream rng(cfg.seed, combine_tags(atag, ci));
        const std::size_t rows =
            std::min(CHUNK, asym_rows - ci * CHUNK);
        const WeightMatrix w = sample_weights(wspec, rows, rng);
        const DegreeMatrix deg = sample_asymptotic_degrees(w, slopes, rng);
        double* cnt = &asym_counts[ci * GRID * GRID];
        for (std::size_t i = 0; i < rows; ++i) {
            const auto d1 = deg(i, 0);
            const auto d2 = deg(i, 1);
            if (d1 < GRID && d2 < GRID) cnt[d1 * GRID + d2] += 1.0;
        }
    });

    LemmaReport rep;
    rep.n = cfg.n;
    rep.graph_samples = G * cfg.n;
    rep.asym_samples = asym_rows;
    for (int m1 = 0; m1 < GRID; ++m1) {
        for (int m2 = 0; m2 < GRID; ++m2) {
            const int c = m1 * GRID + m2;
            // graph side: mean and between-graph spread of per-graph frequencies
            double gm = 0;
            for (std::size_t gi = 0; gi < G; ++gi) gm += graph_freq[gi * GRID * GRID + c];
            gm /= static_cast<double>(G);
            double gvar = 0;
            for (std::size_t gi = 0; gi < G; ++gi) {
                const double d = graph_freq[gi * GRID * GRID + c] - gm;
                gvar += d * d;
            }
            double se_g;
            if (G > 1) {
                gvar /= static_cast<double>(G - 1);
                se_g = std::sqrt(gvar / static_cast<double>(G));
            } else {
                se_g = std::sqrt(std::max(gm * (1 - gm), 1e-12) /
                                 static_cast<double>(rep.graph_samples));
            }
            double ac = 0;
            for (std::size_t ci = 0; ci < n_chunks; ++ci) ac += asym_counts[ci * GRID * GRID + c];
            const double am = ac / static_cast<double>(asym_rows);
            const double se_a = std::sqrt(std::max(am * (1 - am), 1e-12) /
                                          static_cast<double>(asym_rows));

            LemmaCell cell;
            cell.m1 = m1;
            cell.m2 = m2;
            cell.p_graph = gm;
            cell.p_asym = am;
            cell.diff = gm - am;
            cell.se = std::sqrt(se_g * se_g + se_a * se_a);
            rep.cells.push_back(cell);
            rep.max_diff = std::max(rep.max_diff, std::fabs(cell.diff));
            if (cell.se > 0)
                rep.max_ratio = std::max(rep.max_ratio, std::fabs(cell.diff) / cell.se);
        }
    }
    return rep;
}

Example31Report run_example31(const ExperimentConfig& cfg_in) {
    ExperimentConfig cfg = cfg_in;
    cfg.finalize();
    const std::size_t n = cfg.n;
    const std::size_t k0 = cfg.k_list.front();
    if (k0 + 1 > n) throw std::invalid_argument("run_example31: k must be < n");
    const double t = static_cast<double>(n) / static_cast<double>(k0);

    std::vector<double> wv(n), d1(n), d2(n);
    constexpr std::size_t CHUNK = 65536;
    const std::size_t n_chunks = (n + CHUNK - 1) / CHUNK;
    const std::uint64_t tag = hash_tag("example31");
    parallel_for(n_chunks, cfg.parallelism, [&](std::size_t ci) {
        RngStream rng(cfg.seed, combine_tags(tag, ci));
        const std::size_t lo = ci * CHUNK, hi = std::min(n, lo + CHUNK);
        for (std::size_t i = lo; i < hi; ++i) {
            const double v = sample_pareto(cfg.alpha, rng);
            wv[i] = v;
            d1[i] = static_cast<double>(sample_poisson(v, rng));
            d2[i] = static_cast<double>(sample_poisson(v, rng));
        }
    });

    Example31Report rep;
    rep.n = n;
    rep.t = t;
    rep.target_index = 2.0 * cfg.alpha;
    rep.norm_factor =
        std::pow(std::sqrt(M_PI) / std::tgamma(cfg.alpha + 0.5), 1.0 / (2.0 * cfg.alpha));

    std::vector<double> sqrtw(n), gap(n);
    for (std::size_t i = 0; i < n; ++i) {
        sqrtw[i] = std::sqrt(wv[i]);
        gap[i] = std::fabs(d1[i] - d2[i]);
    }
    rep.b0 = empirical_quantile(sqrtw, t);

    const double u_grid[] = {1.0, 1.5, 2.0};
    const double v_grid[] = {0.0, 0.5, 1.0};
    for (double u : u_grid) {
        for (double v : v_grid) {
            std::size_t count = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (gap[i] <= 0) continue;  // zero distance fails the u > 0 cut
                // |D1 - D2| = sqrt(2) * distance-to-diagonal, and the distance
                // itself scales like sqrt(2 W); together the gap's quantile
                // scale is 2 * b0 / norm_factor.
                if (gap[i] * rep.norm_factor / (2.0 * rep.b0) <= u) continue;
                const double ratio = std::sqrt(2.0) * d1[i] / sqrtw[i] / gap[i];
                if (ratio > v) ++count;
            }
            const double phat = static_cast<double>(count) / static_cast<double>(n);
            Example31Row row;
            row.u = u;
            row.v = v;
            row.mc = t * phat;
            row.se = t * std::sqrt(std::max(phat * (1 - phat), 0.0) / static_cast<double>(n));
            row.limit = example31_limit(u, v, cfg.alpha);
            rep.rows.push_back(row);
        }
    }

    for (std::size_t k : cfg.k_list) rep.hill_rows.push_back(hill(gap, k));
    return rep;
}

// ------------------------------------------------------------------- outputs

std::vector<std::string> emit_outputs(const SummaryTable& table, const std::string& dir) {
    std::vector<std::string> paths;
    std::string path;

    if (!table.hill_rows.empty()) {
        auto rows = table.hill_rows;
        std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            return a.alpha != b.alpha ? a.alpha < b.alpha : a.k < b.k;
        });
        auto os = open_out(dir, table.name + ".csv", path);
        os << "alpha,k,bias,mse,replicates\n";
        for (const auto& r : rows)
            os << g6(r.alpha) << ',' << r.k << ',' << g6(r.bias) << ',' << g6(r.mse) << ','
               << r.replicates << "\n";
        paths.push_back(path);

        SvgChart chart;
        chart.title = "Hill tail-index estimate: bias vs k";
        chart.x_label = "k";
        chart.y_label = "bias of alpha_hat";
        chart.log_x = true;
        const char* colors[] = {"#1b6ca8", "#c23b22", "#2e8540", "#7b4fa6", "#b8860b"};
        std::size_t ci = 0;
        double prev_alpha = NaN;
        SvgSeries cur;
        auto flush = [&]() {
            if (!cur.x.empty()) chart.series.push_back(cur);
            cur = SvgSeries{};
        };
        for (const auto& r : rows) {
            if (r.alpha != prev_alpha) {
                flush();
                cur.label = "alpha=" + g6(r.alpha);
                cur.color = colors[ci++ % 5];
                prev_alpha = r.alpha;
            }
            if (!std::isnan(r.bias)) {
                cur.x.push_back(static_cast<double>(r.k));
                cur.y.push_back(r.bias);
            }
        }
        flush();
        SvgSeries zero;
        zero.label = "zero bias";
        zero.color = "#888888";
        zero.dashed = true;
        zero.x = {static_cast<double>(rows.front().k), static_cast<double>(rows.back().k)};
        zero.y = {0.0, 0.0};
        chart.series.push_back(zero);
        path = (std::filesystem::path(dir) / (table.name + ".svg")).string();
        chart.save(path);
        paths.push_back(path);
    }

    if (!table.band_rows.empty()) {
        auto rows = table.band_rows;
        std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            return a.trace != b.trace ? a.trace < b.trace : a.k < b.k;
        });
        auto os = open_out(dir, table.name + "_bands.csv", path);
        os << "trace,k,mean,p10,p25,p75,p90\n";
        for (const auto& r : rows)
            os << r.trace << ',' << r.k << ',' << g6(r.mean) << ',' << g6(r.p10) << ','
               << g6(r.p25) << ',' << g6(r.p75) << ',' << g6(r.p90) << "\n";
        paths.push_back(path);

        for (const std::string trace : {"neg", "pos"}) {
            SvgChart chart;
            chart.title = table.name + " trace (" + trace + " orientation)";
            chart.x_label = "k";
            chart.y_label = "statistic";
            SvgBand outer, inner;
            outer.color = "#ffb6c1";  // 10-90 band
            outer.opacity = 0.55;
            inner.color = "#9370db";  // 25-75 band
            inner.opacity = 0.55;
            SvgSeries mean_line;
            mean_line.label = "mean";
            mean_line.color = "#000000";
            for (const auto& r : rows) {
                if (r.trace != trace) continue;
                const auto k = static_cast<double>(r.k);
                outer.x.push_back(k);
                outer.lo.push_back(r.p10);
                outer.hi.push_back(r.p90);
                inner.x.push_back(k);
                inner.lo.push_back(r.p25);
                inner.hi.push_back(r.p75);
                mean_line.x.push_back(k);
                mean_line.y.push_back(r.mean);
            }
            if (mean_line.x.empty()) continue;
            SvgSeries ref;
            ref.label = "1";
            ref.color = "#666666";
            ref.dashed = true;
            ref.x = {mean_line.x.front(), mean_line.x.back()};
            ref.y = {1.0, 1.0};
            chart.bands = {outer, inner};
            chart.series = {mean_line, ref};
            path = (std::filesystem::path(dir) / (table.name + "_" + trace + ".svg")).string();
            chart.save(path);
            paths.push_back(path);
        }
    }
    return paths;
}

std::vector<std::string> emit_outputs(const LemmaReport& rep, const std::string& dir) {
    std::vector<std::string> paths;
    std::string path;
    auto os = open_out(dir, "lemma.csv", path);
    os << "m1,m2,p_graph,p_asym,diff,se\n";
    for (const auto& c : rep.cells)  // already (m1,m2) row-major
        os << c.m1 << ',' << c.m2 << ',' << g6(c.p_graph) << ',' << g6(c.p_asym) << ','
           << g6(c.diff) << ',' << g6(c.se) << "\n";
    paths.push_back(path);

    std::string spath;
    auto ss = open_out(dir, "lemma_summary.txt", spath);
    ss << "finite-graph degree pmf vs mixed-Poisson limit on {0..5}^2\n"
       << "n=" << rep.n << " graph_samples=" << rep.graph_samples
       << " asym_samples=" << rep.asym_samples << "\n"
       << "max |diff| = " << g6(rep.max_diff) << "\n"
       << "max |diff|/se = " << g6(rep.max_ratio) << "\n";
    paths.push_back(spath);
    return paths;
}

std::vector<std::string> emit_outputs(const Example31Report& rep, const std::string& dir) {
    std::vector<std::string> paths;
    std::string path;
    auto os = open_out(dir, "example31.csv", path);
    os << "u,v,mc,se,limit\n";
    for (const auto& r : rep.rows)
        os << g6(r.u) << ',' << g6(r.v) << ',' << g6(r.mc) << ',' << g6(r.se) << ','
           << g6(r.limit) << "\n";
    paths.push_back(path);

    std::string hpath;
    auto hs = open_out(dir, "example31_hill.csv", hpath);
    hs << "k,hill,alpha_hat,target\n";
    for (const auto& r : rep.hill_rows) {
        hs << r.k << ',' << g6(r.hill) << ',';
        if (r.alpha_hat) hs << g6(*r.alpha_hat);
        hs << ',' << g6(rep.target_index) << "\n";
    }
    paths.push_back(hpath);

    SvgChart chart;
    chart.title = "Hill index of the coordinate gap";
    chart.x_label = "k";
    chart.y_label = "alpha_hat";
    chart.log_x = true;
    SvgSeries est;
    est.label = "estimate";
    est.color = "#1b6ca8";
    for (const auto& r : rep.hill_rows)
        if (r.alpha_hat) {
            est.x.push_back(static_cast<double>(r.k));
            est.y.push_back(*r.alpha_hat);
        }
    SvgSeries target;
    target.label = "target";
    target.color = "#888888";
    target.dashed = true;
    if (!est.x.empty()) {
        target.x = {est.x.front(), est.x.back()};
        target.y = {rep.target_index, rep.target_index};
    }
    chart.series = {est, target};
    path = (std::filesystem::path(dir) / "example31_hill.svg").string();
    chart.save(path);
    paths.push_back(path);
    return paths;
}

}  // namespace mirg
