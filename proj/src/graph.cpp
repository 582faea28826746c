#include "mirg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mirg/dist.hpp"

namespace mirg {

double ConnectionFn::operator()(double x) const {
    if (!(x >= 0)) throw std::domain_error("connection function: argument must be >= 0");
    switch (kind) {
        case ConnectionKind::identity: return x;
        case ConnectionKind::cap_one: return x < 1.0 ? x : 1.0;
        case ConnectionKind::odds: return x / (1.0 + x);
        case ConnectionKind::exp_complement: return -std::expm1(-x);
    }
    throw std::logic_error("connection function: unreachable");
}

const char* ConnectionFn::name() const {
    switch (kind) {
        case ConnectionKind::identity: return "identity";
        case ConnectionKind::cap_one: return "cap_one";
        case ConnectionKind::odds: return "odds";
        case ConnectionKind::exp_complement: return "exp_complement";
    }
    return "?";
}

ConnectionFn ConnectionFn::parse(const std::string& name) {
    if (name == "identity") return {ConnectionKind::identity};
    if (name == "cap_one") return {ConnectionKind::cap_one};
    if (name == "odds") return {ConnectionKind::odds};
    if (name == "exp_complement") return {ConnectionKind::exp_complement};
    throw std::invalid_argument("unknown connection function: " + name);
}

LayerSpec::LayerSpec(LayerKind k, ConnectionFn fn) : kind(k), g(fn) {
    if (k == LayerKind::single_edge && !fn.bounded_by_one())
        throw std::invalid_argument(
            "single_edge layer requires a connection function with range in [0,1]; "
            "identity is not admissible");
}

const char* LayerSpec::kind_name() const {
    return kind == LayerKind::multi_edge ? "multi_edge" : "single_edge";
}

LayerSpec LayerSpec::parse(const std::string& token) {
    const auto colon = token.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("layer token must look like kind:connection, got: " + token);
    const std::string kind = token.substr(0, colon);
    const ConnectionFn g = ConnectionFn::parse(token.substr(colon + 1));
    if (kind == "multi_edge" || kind == "multi") return {LayerKind::multi_edge, g};
    if (kind == "single_edge" || kind == "single") return {LayerKind::single_edge, g};
    throw std::invalid_argument("unknown layer kind: " + kind);
}

std::int64_t MultilayerGraph::total_multiplicity(std::size_t l) const {
    std::int64_t t = 0;
    for (const Edge& e : layers.at(l)) t += e.multiplicity;
    return t;
}

namespace {

// Walker alias table for sampling an index with probability weight[i]/total.
class AliasTable {
public:
    explicit AliasTable(std::span<const double> weight) {
        const std::size_t n = weight.size();
        prob_.resize(n);
        alias_.resize(n);
        double total = 0;
        for (double w : weight) total += w;
        std::vector<double> scaled(n);
        std::vector<std::uint32_t> small, large;
        for (std::size_t i = 0; i < n; ++i) {
            scaled[i] = weight[i] * n / total;
            (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
        }
        while (!small.empty() && !large.empty()) {
            const auto s = small.back();
            const auto l = large.back();
            small.pop_back();
            prob_[s] = scaled[s];
            alias_[s] = l;
            scaled[l] -= 1.0 - scaled[s];
            if (scaled[l] < 1.0) {
                large.pop_back();
                small.push_back(l);
            }
        }
        for (auto l : large) prob_[l] = 1.0;
        for (auto s : small) prob_[s] = 1.0;  // fp leftovers
    }

    std::uint32_t sample(RngStream& rng) const {
        const auto i = static_cast<std::uint32_t>(rng.next_u64() % prob_.size());
        return rng.u01() < prob_[i] ? i : alias_[i];
    }

private:
    std::vector<double> prob_;
    std::vector<std::uint32_t> alias_;
};

// probability that a proposal with linear rate x survives thinning to g
double keep_fraction(const ConnectionFn& g, double x) {
    switch (g.kind) {
        case ConnectionKind::identity: return 1.0;
        case ConnectionKind::cap_one: return x <= 1.0 ? 1.0 : 1.0 / x;
        case ConnectionKind::odds: return 1.0 / (1.0 + x);
        case ConnectionKind::exp_complement: return x == 0 ? 1.0 : -std::expm1(-x) / x;
    }
    return 1.0;
}

std::vector<double> layer_column(const WeightMatrix& w, std::size_t l) {
    std::vector<double> col(w.n);
    for (std::size_t i = 0; i < w.n; ++i) col[i] = w(i, l);
    return col;
}

void validate_inputs(const WeightMatrix& w, const std::vector<LayerSpec>& layers) {
    if (w.n == 0) throw std::invalid_argument("generate: empty weight matrix");
    if (w.n > (1ull << 31))
        throw std::invalid_argument("generate: more than 2^31 nodes unsupported");
    if (layers.empty()) throw std::invalid_argument("generate: need at least one layer");
    if (layers.size() != w.L)
        throw std::invalid_argument("generate: layer list length must match weight columns");
    for (double x : w.w)
        if (!(x >= 0) || !std::isfinite(x))
            throw std::domain_error("generate: weights must be finite and >= 0");
}

double layer_total_checked(std::span<const double> col, std::size_t l) {
    double t = 0;
    for (double x : col) t += x;
    if (!(t > 0)) {
        char msg[96];
        std::snprintf(msg, sizeof msg,
                      "degenerate weights: layer %zu has zero total weight", l + 1);
        throw std::domain_error(msg);
    }
    return t;
}

std::vector<Edge> edges_from_sorted_keys(std::vector<std::uint64_t>& keys) {
    std::sort(keys.begin(), keys.end());
    std::vector<Edge> edges;
    for (std::size_t a = 0; a < keys.size();) {
        std::size_t b = a;
        while (b < keys.size() && keys[b] == keys[a]) ++b;
        edges.push_back(Edge{static_cast<std::int64_t>(keys[a] >> 32),
                             static_cast<std::int64_t>(keys[a] & 0xFFFFFFFFull),
                             static_cast<std::int64_t>(b - a)});
        a = b;
    }
    return edges;
}

std::vector<Edge> multi_layer_fast(std::span<const double> col, double T,
                                   const ConnectionFn& g, RngStream& rng) {
    const AliasTable alias(col);
    std::vector<std::uint64_t> keys;

    // Pair proposals: a Poisson(T/2) marked process whose per-cell intensity is
    // W_i W_j / T off the diagonal and W_i^2 / (2T) on it.
    const std::int64_t m1 = sample_poisson(T / 2.0, rng);
    keys.reserve(static_cast<std::size_t>(m1));
    for (std::int64_t t = 0; t < m1; ++t) {
        std::uint32_t i = alias.sample(rng);
        std::uint32_t j = alias.sample(rng);
        if (i > j) std::swap(i, j);
        const double rate = col[i] * col[j] / T;
        if (g.kind != ConnectionKind::identity && rng.u01() >= keep_fraction(g, rate))
            continue;
        keys.push_back((static_cast<std::uint64_t>(i) << 32) | j);
    }

    // Complete the diagonal: the remaining W_i^2/(2T) of self-loop intensity,
    // already thinned, is Poisson(g(rate_ii)/rate_ii * W_i^2/(2T)) per node.
    for (std::size_t i = 0; i < col.size(); ++i) {
        if (col[i] <= 0) continue;
        const double rate = col[i] * col[i] / T;
        const double lam = 0.5 * rate * keep_fraction(g, rate);
        const std::int64_t c = sample_poisson(lam, rng);
        for (std::int64_t t = 0; t < c; ++t)
            keys.push_back((static_cast<std::uint64_t>(i) << 32) | i);
    }

    return edges_from_sorted_keys(keys);
}

std::vector<Edge> single_layer_fast(std::span<const double> col, double T,
                                    const ConnectionFn& g, RngStream& rng) {
    // Positive-weight nodes in decreasing weight order; zero weight never connects.
    std::vector<std::uint32_t> order;
    order.reserve(col.size());
    for (std::uint32_t i = 0; i < col.size(); ++i)
        if (col[i] > 0) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return col[a] != col[b] ? col[a] > col[b] : a < b;
    });

    const std::size_t m = order.size();
    std::vector<std::uint64_t> keys;
    for (std::size_t a = 0; a < m; ++a) {
        const double wa = col[order[a]];
        std::size_t j = a;
        while (j < m) {
            // Upper bound for every candidate at or beyond j in this row.
            const double q = g(wa * col[order[j]] / T);
            if (!(q > 0)) break;
            if (q < 1.0) {
                const double skip =
                    std::floor(std::log(rng.u01_pos()) / std::log1p(-q));
                if (!(skip < static_cast<double>(m - j))) break;
                j += static_cast<std::size_t>(skip);
            }
            const double p = g(wa * col[order[j]] / T);
            if (q >= 1.0 || rng.u01() * q < p) {
                std::uint32_t u = order[a], v = order[j];
                if (u > v) std::swap(u, v);
                keys.push_back((static_cast<std::uint64_t>(u) << 32) | v);
            }
            ++j;
        }
    }
    return edges_from_sorted_keys(keys);
}

std::vector<Edge> layer_naive(std::span<const double> col, double T, const LayerSpec& spec,
                              RngStream& rng) {
    std::vector<Edge> edges;
    const auto n = static_cast<std::int64_t>(col.size());
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = i; j < n; ++j) {
            const double p = spec.g(col[i] * col[j] / T);
            std::int64_t c;
            if (spec.kind == LayerKind::multi_edge)
                c = sample_poisson(p, rng);
            else
                c = rng.u01() < p ? 1 : 0;
            if (c > 0) edges.push_back(Edge{i, j, c});
        }
    }
    return edges;
}

MultilayerGraph generate_impl(const WeightMatrix& w, const std::vector<LayerSpec>& layers,
                              RngStream& rng, bool fast) {
    validate_inputs(w, layers);
    MultilayerGraph g;
    g.n = static_cast<std::int64_t>(w.n);
    g.layers.resize(layers.size());

    // One instance tag per generated graph, then an independent child stream
    // per layer; layers could be filled concurrently without changing output.
    const std::uint64_t instance = rng.next_u64();
    const RngStream base = rng.derive(instance);

    for (std::size_t l = 0; l < layers.size(); ++l) {
        const std::vector<double> col = layer_column(w, l);
        const double T = layer_total_checked(col, l);
        RngStream lr = base.derive(static_cast<std::uint64_t>(l) + 1);
        if (!fast)
            g.layers[l] = layer_naive(col, T, layers[l], lr);
        else if (layers[l].kind == LayerKind::multi_edge)
            g.layers[l] = multi_layer_fast(col, T, layers[l].g, lr);
        else
            g.layers[l] = single_layer_fast(col, T, layers[l].g, lr);
    }
    return g;
}

}  // namespace

MultilayerGraph generate_naive(const WeightMatrix& w, const std::vector<LayerSpec>& layers,
                               RngStream& rng) {
    return generate_impl(w, layers, rng, false);
}

MultilayerGraph generate_fast(const WeightMatrix& w, const std::vector<LayerSpec>& layers,
                              RngStream& rng) {
    return generate_impl(w, layers, rng, true);
}

DegreeMatrix degrees(const MultilayerGraph& g) {
    DegreeMatrix d;
    d.n = static_cast<std::size_t>(g.n);
    d.L = g.layers.size();
    d.d.assign(d.n * d.L, 0);
    for (std::size_t l = 0; l < d.L; ++l) {
        for (const Edge& e : g.layers[l]) {
            d(static_cast<std::size_t>(e.i), l) += e.multiplicity;
            if (e.j != e.i) d(static_cast<std::size_t>(e.j), l) += e.multiplicity;
        }
    }
    return d;
}

DegreeMatrix sample_asymptotic_degrees(const WeightMatrix& w, std::span<const double> c,
                                       RngStream& rng) {
    if (c.size() != w.L)
        throw std::invalid_argument("sample_asymptotic_degrees: need one slope per layer");
    for (double x : c)
        if (!(x > 0))
            throw std::invalid_argument("sample_asymptotic_degrees: slopes must be > 0");
    DegreeMatrix d;
    d.n = w.n;
    d.L = w.L;
    d.d.resize(w.n * w.L);
    for (std::size_t i = 0; i < w.n; ++i)
        for (std::size_t l = 0; l < w.L; ++l)
            d(i, l) = sample_poisson(c[l] * w(i, l), rng);
    return d;
}

std::vector<double> conditional_mean_degree(const WeightMatrix& w,
                                            const std::vector<LayerSpec>& layers,
                                            std::size_t i) {
    if (layers.size() != w.L)
        throw std::invalid_argument("conditional_mean_degree: layer list length mismatch");
    if (i >= w.n) throw std::out_of_range("conditional_mean_degree: node index out of range");
    std::vector<double> mean(w.L, 0.0);
    for (std::size_t l = 0; l < w.L; ++l) {
        std::vector<double> col = layer_column(w, l);
        const double T = layer_total_checked(col, l);
        if (layers[l].g.kind == ConnectionKind::identity) {
            // sum_j W_il W_jl / T_l = W_il exactly
            mean[l] = layers[l].g.slope() * w(i, l);
        } else {
            double s = 0;
            for (double wj : col) s += layers[l].g(w(i, l) * wj / T);
            mean[l] = s;
        }
    }
    return mean;
}

void write_edge_tsv(const MultilayerGraph& g, std::ostream& os) {
    for (std::size_t l = 0; l < g.layers.size(); ++l)
        for (const Edge& e : g.layers[l])
            os << (l + 1) << '\t' << (e.i + 1) << '\t' << (e.j + 1) << '\t'
               << e.multiplicity << "\n";
}

void write_edge_tsv(const MultilayerGraph& g, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_edge_tsv(g, os);
    if (!os.good()) throw std::runtime_error("write failed: " + path);
}

MultilayerGraph read_edge_tsv(std::istream& is, std::int64_t n, std::size_t L) {
    if (n <= 0) throw std::invalid_argument("read_edge_tsv: n must be >= 1");
    if (L == 0) throw std::invalid_argument("read_edge_tsv: L must be >= 1");
    MultilayerGraph g;
    g.n = n;
    g.layers.resize(L);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::int64_t layer, i, j, mult;
        if (!(ls >> layer >> i >> j >> mult))
            throw std::runtime_error("edge tsv: malformed line " + std::to_string(lineno));
        if (layer < 1 || static_cast<std::size_t>(layer) > L)
            throw std::runtime_error("edge tsv: layer out of range on line " +
                                     std::to_string(lineno));
        if (i < 1 || j < i || j > n)
            throw std::runtime_error("edge tsv: need 1 <= i <= j <= n on line " +
                                     std::to_string(lineno));
        if (mult < 1)
            throw std::runtime_error("edge tsv: multiplicity must be >= 1 on line " +
                                     std::to_string(lineno));
        g.layers[static_cast<std::size_t>(layer - 1)].push_back(Edge{i - 1, j - 1, mult});
    }
    for (auto& layer : g.layers)
        std::sort(layer.begin(), layer.end(), [](const Edge& a, const Edge& b) {
            return a.i != b.i ? a.i < b.i : a.j < b.j;
        });
    return g;
}

MultilayerGraph read_edge_tsv(const std::string& path, std::int64_t n, std::size_t L) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return read_edge_tsv(is, n, L);
}

void write_degrees_csv(const DegreeMatrix& d, std::ostream& os) {
    os << "node";
    for (std::size_t l = 1; l <= d.L; ++l) os << ",d" << l;
    os << "\n";
    for (std::size_t i = 0; i < d.n; ++i) {
        os << (i + 1);
        for (std::size_t l = 0; l < d.L; ++l) os << ',' << d(i, l);
        os << "\n";
    }
}

void write_degrees_csv(const DegreeMatrix& d, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_degrees_csv(d, os);
    if (!os.good()) throw std::runtime_error("write failed: " + path);
}

DegreeMatrix read_degrees_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("degree csv: empty input");
    std::size_t L = 0;
    for (char ch : line)
        if (ch == ',') ++L;
    if (L == 0 || line.rfind("node", 0) != 0)
        throw std::runtime_error("degree csv: bad header");
    DegreeMatrix m;
    m.L = L;
    std::size_t expect = 1;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        if (!std::getline(ls, field, ',')) break;
        if (std::stoull(field) != expect)
            throw std::runtime_error("degree csv: node ids must be 1-based and consecutive");
        ++expect;
        for (std::size_t l = 0; l < L; ++l) {
            if (!std::getline(ls, field, ','))
                throw std::runtime_error("degree csv: short row");
            const long long v = std::stoll(field);
            if (v < 0) throw std::runtime_error("degree csv: negative degree");
            m.d.push_back(v);
        }
    }
    m.n = m.d.size() / L;
    return m;
}

DegreeMatrix read_degrees_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return read_degrees_csv(is);
}

}  // namespace mirg
