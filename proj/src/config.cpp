#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mirg/evt.hpp"
#include "mirg/experiments.hpp"

namespace mirg {

const char* experiment_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::table1: return "table1";
        case ExperimentKind::hrv: return "hrv";
        case ExperimentKind::lemma: return "lemma";
        case ExperimentKind::example31: return "example31";
    }
    return "?";
}

ExperimentKind parse_experiment(const std::string& name) {
    if (name == "table1") return ExperimentKind::table1;
    if (name == "hrv") return ExperimentKind::hrv;
    if (name == "lemma") return ExperimentKind::lemma;
    if (name == "example31") return ExperimentKind::example31;
    throw std::invalid_argument("unknown experiment: " + name +
                                " (expected table1|hrv|lemma|example31)");
}

namespace {

std::vector<std::size_t> k_grid(std::size_t lo, std::size_t hi, std::size_t step) {
    std::vector<std::size_t> ks;
    for (std::size_t k = lo; k <= hi; k += step) ks.push_back(k);
    return ks;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, sep)) out.push_back(trim(item));
    return out;
}

std::vector<std::size_t> parse_k_list(const std::string& value) {
    // either "a,b,c" or "lo:hi:step"
    if (value.find(':') != std::string::npos) {
        const auto parts = split(value, ':');
        if (parts.size() != 3)
            throw std::invalid_argument("k_list range must be lo:hi:step, got: " + value);
        const auto lo = std::stoull(parts[0]);
        const auto hi = std::stoull(parts[1]);
        const auto step = std::stoull(parts[2]);
        if (lo < 1 || hi < lo || step < 1)
            throw std::invalid_argument("k_list range must satisfy 1 <= lo <= hi, step >= 1");
        return k_grid(lo, hi, step);
    }
    std::vector<std::size_t> ks;
    for (const auto& tok : split(value, ','))
        if (!tok.empty()) ks.push_back(std::stoull(tok));
    return ks;
}

double parse_norm_order(const std::string& value) {
    if (value == "inf" || value == "infinity")
        return std::numeric_limits<double>::infinity();
    return std::stod(value);
}

std::vector<LayerSpec> parse_layers(const std::string& value) {
    std::vector<LayerSpec> layers;
    for (const auto& tok : split(value, ','))
        if (!tok.empty()) layers.push_back(LayerSpec::parse(tok));
    return layers;
}

}  // namespace

ExperimentConfig ExperimentConfig::defaults(ExperimentKind kind, bool paper_scale) {
    ExperimentConfig c;
    c.experiment = kind;
    switch (kind) {
        case ExperimentKind::table1:
            c.alpha = 1.4;
            c.layers = {LayerSpec(LayerKind::multi_edge, ConnectionFn::parse("cap_one")),
                        LayerSpec(LayerKind::single_edge, ConnectionFn::parse("odds"))};
            c.p = 1;
            if (paper_scale) {
                c.n = 1000000;
                c.replicates = 1000;
                c.k_list = {100, 200, 500, 1000, 5000, 10000, 100000};
            } else {
                c.n = 100000;
                c.replicates = 100;
                c.k_list = {100, 200, 500, 1000};
            }
            break;
        case ExperimentKind::hrv:
            c.alpha = 1.1;
            c.alpha0 = 1.3;
            c.layers = {LayerSpec(LayerKind::multi_edge, ConnectionFn::parse("identity")),
                        LayerSpec(LayerKind::single_edge, ConnectionFn::parse("exp_complement"))};
            if (paper_scale) {
                c.n = 2000000;
                c.replicates = 1000;
                c.k_list = k_grid(1, 4000, 1);
            } else {
                c.n = 200000;
                c.replicates = 100;
                c.k_list = k_grid(10, 4000, 10);
            }
            break;
        case ExperimentKind::lemma:
            c.alpha = 1.8;
            c.layers = {LayerSpec(LayerKind::multi_edge, ConnectionFn::parse("identity")),
                        LayerSpec(LayerKind::single_edge, ConnectionFn::parse("odds"))};
            c.n = 10000;
            c.replicates = paper_scale ? 1000000 : 100000;  // degree samples per side
            break;
        case ExperimentKind::example31:
            c.alpha = 1.0;
            c.layers = {LayerSpec(LayerKind::multi_edge, ConnectionFn::parse("identity")),
                        LayerSpec(LayerKind::multi_edge, ConnectionFn::parse("identity"))};
            c.n = paper_scale ? 4000000 : 1000000;
            c.replicates = 1;
            c.k_list = {500, 1000, 2000};
            break;
    }
    return c;
}

void ExperimentConfig::finalize() {
    if (n < 1) throw std::invalid_argument("config: n must be >= 1");
    if (replicates < 1) throw std::invalid_argument("config: replicates must be >= 1");
    if (parallelism < 1) throw std::invalid_argument("config: parallelism must be >= 1");
    if (!(std::isinf(p) || p >= 1))
        throw std::invalid_argument("config: norm order p must be >= 1 or inf");
    if (kappa) {
        if (!k_list.empty())
            throw std::invalid_argument("config: give either k_list or kappa, not both");
        k_list = {select_kn(n, alpha, *kappa)};
    }
    if (experiment != ExperimentKind::lemma) {
        if (k_list.empty()) throw std::invalid_argument("config: k_list required");
        std::sort(k_list.begin(), k_list.end());
        k_list.erase(std::unique(k_list.begin(), k_list.end()), k_list.end());
        if (k_list.front() < 1)
            throw std::invalid_argument("config: every k must be >= 1");
    }
    if (experiment == ExperimentKind::hrv && !alpha0)
        throw std::invalid_argument("config: hrv requires alpha0");
    if (layers.empty()) throw std::invalid_argument("config: at least one layer required");
}

ExperimentConfig load_config(std::istream& is, ExperimentConfig base) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "experiment")
                base.experiment = parse_experiment(value);
            else if (key == "n")
                base.n = std::stoull(value);
            else if (key == "replicates")
                base.replicates = std::stoull(value);
            else if (key == "alpha")
                base.alpha = std::stod(value);
            else if (key == "alpha0")
                base.alpha0 = std::stod(value);
            else if (key == "k_list")
                base.k_list = parse_k_list(value);
            else if (key == "kappa")
                base.kappa = std::stod(value);
            else if (key == "layers")
                base.layers = parse_layers(value);
            else if (key == "p")
                base.p = parse_norm_order(value);
            else if (key == "seed")
                base.seed = std::stoull(value);
            else if (key == "parallelism")
                base.parallelism = std::stoull(value);
            else if (key == "output_dir")
                base.output_dir = value;
            else
                throw std::invalid_argument("unknown key: " + key);
        } catch (const std::exception& e) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + " (" + key +
                                        "): " + e.what());
        }
    }
    return base;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config: " + path);
    return load_config(is, std::move(base));
}

}  // namespace mirg
