#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mirg/cones.hpp"
#include "mirg/evt.hpp"
#include "mirg/experiments.hpp"
#include "mirg/graph.hpp"
#include "mirg/oracles.hpp"
#include "mirg/weights.hpp"

namespace {

using namespace mirg;

double parse_p(const std::string& s) {
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    return std::stod(s);
}

std::vector<LayerSpec> parse_layer_list(const std::vector<std::string>& tokens) {
    std::vector<LayerSpec> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(LayerSpec::parse(t));
    return out;
}

WeightModelSpec make_model(const std::string& name, double alpha, double alpha0) {
    if (name == "single_factor") return WeightModelSpec::single_factor(alpha);
    if (name == "hrv_mixture") return WeightModelSpec::hrv_mixture(alpha, alpha0);
    if (name == "full_dependence") return WeightModelSpec::full_dependence(alpha);
    throw std::invalid_argument("unknown weight model: " + name);
}

// stream sink: path or stdout when empty
void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path.empty()) {
        fn(std::cout);
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    fn(os);
}

int cmd_generate(const std::string& model, std::size_t n, double alpha, double alpha0,
                 const std::vector<std::string>& layer_tokens, std::uint64_t seed,
                 const std::string& edges_out, const std::string& weights_out, bool naive) {
    const auto layers = parse_layer_list(layer_tokens);
    const auto spec = make_model(model, alpha, alpha0);
    RngStream rng(seed, 0);
    const auto w = sample_weights(spec, n, rng);
    if (layers.size() != w.L)
        throw std::invalid_argument("model produces " + std::to_string(w.L) +
                                    " layers, got " + std::to_string(layers.size()) +
                                    " layer specs");
    const auto g = naive ? generate_naive(w, layers, rng) : generate_fast(w, layers, rng);
    if (!weights_out.empty()) write_weights_csv(w, weights_out);
    with_output(edges_out, [&](std::ostream& os) { write_edge_tsv(g, os); });
    std::int64_t edges = 0;
    for (const auto& layer : g.layers) edges += static_cast<std::int64_t>(layer.size());
    std::cerr << "generated n=" << n << " L=" << layers.size() << " edges=" << edges << "\n";
    return 0;
}

int cmd_degrees(const std::string& edges_in, std::int64_t n, std::size_t L,
                const std::string& out) {
    const auto g = read_edge_tsv(edges_in, n, L);
    const auto d = degrees(g);
    with_output(out, [&](std::ostream& os) { write_degrees_csv(d, os); });
    return 0;
}

int cmd_hill(const std::string& input, const std::string& p_str, std::vector<std::size_t> ks,
             const std::string& out) {
    const auto d = read_degrees_csv(input);
    const auto r = norms(d, parse_p(p_str));
    std::vector<TailIndexEstimate> rows;
    rows.reserve(ks.size());
    for (const auto k : ks) rows.push_back(hill(r, k));
    with_output(out, [&](std::ostream& os) { write_hill_csv(rows, os); });
    return 0;
}

int cmd_hillish(const std::string& input, double slope, const std::vector<std::size_t>& ks,
                const std::string& out) {
    const auto d = read_degrees_csv(input);
    const auto coords = xi_eta(d, slope);
    const auto [xi, eta] = coords.compact();
    const auto [pos, neg] = hillish_pair(xi, eta, ks);
    with_output(out, [&](std::ostream& os) { write_hillish_csv(pos, neg, os); });
    if (coords.excluded_count)
        std::cerr << "excluded " << coords.excluded_count << " zero-degree rows\n";
    return 0;
}

struct ExperimentCli {
    std::string kind;
    std::string config_path;
    bool paper_scale = false;
    // optional overrides; sentinel = not set
    std::int64_t n = -1, replicates = -1, workers = -1;
    double alpha = -1, alpha0 = -1, kappa = -1;
    std::string p, out;
    std::vector<std::size_t> ks;
    std::vector<std::string> layer_tokens;
    std::int64_t seed = -1;
};

int cmd_experiment(const ExperimentCli& cli) {
    auto cfg = ExperimentConfig::defaults(parse_experiment(cli.kind), cli.paper_scale);
    if (!cli.config_path.empty()) cfg = load_config(cli.config_path, cfg);
    if (cli.n >= 0) cfg.n = static_cast<std::size_t>(cli.n);
    if (cli.replicates >= 0) cfg.replicates = static_cast<std::size_t>(cli.replicates);
    if (cli.workers >= 0) cfg.parallelism = static_cast<std::size_t>(cli.workers);
    if (cli.alpha >= 0) cfg.alpha = cli.alpha;
    if (cli.alpha0 >= 0) cfg.alpha0 = cli.alpha0;
    if (cli.kappa >= 0) {
        cfg.kappa = cli.kappa;
        cfg.k_list.clear();
    }
    if (!cli.ks.empty()) cfg.k_list = cli.ks;
    if (!cli.layer_tokens.empty()) cfg.layers = parse_layer_list(cli.layer_tokens);
    if (!cli.p.empty()) cfg.p = parse_p(cli.p);
    if (cli.seed >= 0) cfg.seed = static_cast<std::uint64_t>(cli.seed);
    if (!cli.out.empty()) cfg.output_dir = cli.out;
    cfg.finalize();

    std::vector<std::string> paths;
    switch (cfg.experiment) {
        case ExperimentKind::table1:
            paths = emit_outputs(run_table1(cfg), cfg.output_dir);
            break;
        case ExperimentKind::hrv:
            paths = emit_outputs(run_hrv_figure(cfg), cfg.output_dir);
            break;
        case ExperimentKind::lemma:
            paths = emit_outputs(run_lemma_degree(cfg), cfg.output_dir);
            break;
        case ExperimentKind::example31:
            paths = emit_outputs(run_example31(cfg), cfg.output_dir);
            break;
    }
    for (const auto& p : paths) std::cout << p << "\n";
    return 0;
}

int cmd_verify(const std::string& what, std::size_t draws, std::uint64_t seed,
               const std::string& out) {
    RngStream rng(seed, 0);
    bool ok = true;
    if (what == "coupling") {
        const std::vector<double> grid{0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9};
        const auto rows = check_coupling(grid, draws, rng);
        for (const auto& r : rows) ok = ok && r.within_3se;
        with_output(out, [&](std::ostream& os) {
            write_report_text(std::span<const CouplingRow>(rows), os);
        });
    } else if (what == "moments") {
        const std::vector<double> grid{0.1, 0.5, 1.0, 4.0, 10.0, 50.0};
        for (const int m : {2, 4}) {
            const auto rep = check_poisson_moment_bound(grid, m, draws, rng);
            ok = ok && rep.all_hold();
            with_output(out, [&](std::ostream& os) { write_report_text(rep, os); });
        }
    } else if (what == "pb3") {
        std::vector<Pb3Report> reports;
        const std::vector<std::vector<double>> cases{
            {0.5}, {0.1, 0.2, 0.3}, {0.9, 0.9, 0.9, 0.9}, std::vector<double>(40, 0.3)};
        for (const auto& c : cases) reports.push_back(check_pb3_bound(c));
        for (int t = 0; t < 20; ++t) {
            std::vector<double> p(1 + rng.next_u64() % 15);
            for (auto& v : p) v = 0.98 * rng.u01();
            reports.push_back(check_pb3_bound(p));
        }
        for (const auto& r : reports) ok = ok && r.holds;
        with_output(out, [&](std::ostream& os) {
            write_report_text(std::span<const Pb3Report>(reports), os);
        });
    } else {
        throw std::invalid_argument("unknown verification: " + what);
    }
    std::cerr << (ok ? "all bounds hold\n" : "BOUND VIOLATION\n");
    return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multilayer heavy-tailed random graph toolkit"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "sample weights and a graph");
    std::string g_model = "single_factor";
    std::size_t g_n = 1000;
    double g_alpha = 1.4, g_alpha0 = 0;
    std::vector<std::string> g_layers{"multi_edge:cap_one", "single_edge:odds"};
    std::uint64_t g_seed = 1;
    std::string g_edges = "edges.tsv", g_weights;
    bool g_naive = false;
    gen->add_option("--model", g_model, "single_factor | hrv_mixture | full_dependence");
    gen->add_option("--n", g_n, "number of nodes")->required();
    gen->add_option("--alpha", g_alpha, "tail index of the weight radius");
    gen->add_option("--alpha0", g_alpha0, "hidden tail index (hrv_mixture)");
    gen->add_option("--layers", g_layers, "layer specs, e.g. multi_edge:cap_one")
        ->delimiter(',');
    gen->add_option("--seed", g_seed, "rng seed");
    gen->add_option("--out", g_edges, "edge list path (tsv); empty for stdout");
    gen->add_option("--weights", g_weights, "also write the weight matrix (csv)");
    gen->add_flag("--naive", g_naive, "use the quadratic reference generator");

    // degrees
    auto* deg = app.add_subcommand("degrees", "per-node per-layer degrees from an edge list");
    std::string d_edges, d_out;
    std::int64_t d_n = 0;
    std::size_t d_L = 0;
    deg->add_option("--edges", d_edges, "edge tsv path")->required();
    deg->add_option("--n", d_n, "number of nodes")->required();
    deg->add_option("--num-layers", d_L, "number of layers")->required();
    deg->add_option("--out", d_out, "degrees csv path; empty for stdout");

    // hill
    auto* hl = app.add_subcommand("hill", "tail index of degree norms");
    std::string h_input, h_out, h_p = "1";
    std::vector<std::size_t> h_ks;
    hl->add_option("--input", h_input, "degrees csv path")->required();
    hl->add_option("--p", h_p, "norm order (>= 1 or inf)");
    hl->add_option("--k", h_ks, "top-order-statistic counts")->required()->delimiter(',');
    hl->add_option("--out", h_out, "output csv; empty for stdout");

    // hillish
    auto* hi = app.add_subcommand("hillish", "rank statistic for hidden joint tails");
    std::string i_input, i_out;
    double i_slope = 1.5;
    std::vector<std::size_t> i_ks;
    hi->add_option("--input", i_input, "degrees csv path")->required();
    hi->add_option("--slope", i_slope, "upper wedge slope");
    hi->add_option("--k", i_ks, "top-order-statistic counts")->required()->delimiter(',');
    hi->add_option("--out", i_out, "output csv; empty for stdout");

    // experiment
    auto* ex = app.add_subcommand("experiment", "run a study end to end");
    ExperimentCli ecli;
    ex->add_option("kind", ecli.kind, "table1 | hrv | lemma | example31")->required();
    ex->add_option("--config", ecli.config_path, "key = value config file");
    ex->add_flag("--paper-scale", ecli.paper_scale, "full-size grids instead of desk scale");
    ex->add_option("--n", ecli.n, "override: nodes per replicate");
    ex->add_option("--replicates", ecli.replicates, "override: replicate count");
    ex->add_option("--workers", ecli.workers, "override: worker threads");
    ex->add_option("--alpha", ecli.alpha, "override: bulk tail index");
    ex->add_option("--alpha0", ecli.alpha0, "override: hidden tail index");
    ex->add_option("--kappa", ecli.kappa, "override: pick k = ceil(n^(1/alpha + kappa))");
    ex->add_option("--k", ecli.ks, "override: k grid")->delimiter(',');
    ex->add_option("--layers", ecli.layer_tokens, "override: layer specs")->delimiter(',');
    ex->add_option("--p", ecli.p, "override: norm order");
    ex->add_option("--seed", ecli.seed, "override: rng seed");
    ex->add_option("--out", ecli.out, "output directory");

    // verify
    auto* vf = app.add_subcommand("verify", "check the probabilistic bounds by simulation");
    std::string v_what, v_out;
    std::size_t v_draws = 200000;
    std::uint64_t v_seed = 1;
    vf->add_option("what", v_what, "coupling | moments | pb3")->required();
    vf->add_option("--draws", v_draws, "monte carlo draws per case");
    vf->add_option("--seed", v_seed, "rng seed");
    vf->add_option("--out", v_out, "report path; empty for stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_generate(g_model, g_n, g_alpha, g_alpha0, g_layers, g_seed, g_edges,
                                g_weights, g_naive);
        if (deg->parsed()) return cmd_degrees(d_edges, d_n, d_L, d_out);
        if (hl->parsed()) return cmd_hill(h_input, h_p, h_ks, h_out);
        if (hi->parsed()) return cmd_hillish(i_input, i_slope, i_ks, i_out);
        if (ex->parsed()) return cmd_experiment(ecli);
        if (vf->parsed()) return cmd_verify(v_what, v_draws, v_seed, v_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: invalid argument: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: out of range: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: domain error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
