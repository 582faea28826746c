#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mirg/rng.hpp"
#include "mirg/weights.hpp"

namespace mirg {

/* Multilayer inhomogeneous random graphs.
 *
 * Given weights W (n x L) with layer totals T_l, layer l places an
 * independent count on every unordered pair i <= j:
 *
 *   multi_edge   A_ijl ~ Poisson( g_l(W_il W_jl / T_l) )
 *   single_edge  A_ijl ~ Bernoulli( g_l(W_il W_jl / T_l) )
 *
 * g_l is a connection function with unit slope at the origin; single-edge
 * layers require its range inside [0,1].  Self-loops (i == j) are allowed
 * and contribute their multiplicity once to the node's degree.
 *
 * generate_naive draws every pair directly (O(n^2 L), reference).
 * generate_fast draws from the identical distribution in roughly
 * O(n + edges) per layer:
 *   - multi_edge: one Poisson total over pair proposals from an alias table
 *     on the weight distribution, plus a direct per-node pass completing the
 *     missing half of the self-loop intensity; non-linear g is applied by
 *     thinning each proposal (a thinned Poisson process is Poisson).
 *   - single_edge: weight-sorted skip sampling; within a row the connection
 *     probability is non-increasing, so geometric jumps under an upper bound
 *     followed by an exact-ratio acceptance visit only O(edges) candidates.
 */

enum class ConnectionKind { identity, cap_one, odds, exp_complement };

struct ConnectionFn {
    ConnectionKind kind = ConnectionKind::identity;

    double operator()(double x) const;

    // Slope at the origin (the c_l of the degree limit); 1 for all built-ins.
    double slope() const { return 1.0; }

    // Near-linearity envelope: |g(x) - slope()*x| <= envelope_M * x^{1+envelope_nu}
    // for 0 <= x < envelope_delta.  Holds with these constants for all built-ins.
    static constexpr double envelope_M = 1.0;
    static constexpr double envelope_nu = 1.0;
    static constexpr double envelope_delta = 1.0;

    bool bounded_by_one() const { return kind != ConnectionKind::identity; }
    const char* name() const;
    static ConnectionFn parse(const std::string& name);
};

enum class LayerKind { multi_edge, single_edge };

struct LayerSpec {
    LayerKind kind;
    ConnectionFn g;

    LayerSpec(LayerKind k, ConnectionFn fn);  // rejects single_edge + identity
    const char* kind_name() const;
    static LayerSpec parse(const std::string& token);  // e.g. "multi_edge:identity"
};

struct Edge {
    std::int64_t i, j;          // 0-based, i <= j
    std::int64_t multiplicity;  // >= 1 (single-edge layers: exactly 1)
};

struct MultilayerGraph {
    std::int64_t n = 0;
    std::vector<std::vector<Edge>> layers;  // each sorted by (i, j)

    std::int64_t total_multiplicity(std::size_t l) const;
};

struct DegreeMatrix {
    std::size_t n = 0, L = 0;
    std::vector<std::int64_t> d;  // row-major n x L

    std::int64_t operator()(std::size_t i, std::size_t l) const { return d[i * L + l]; }
    std::int64_t& operator()(std::size_t i, std::size_t l) { return d[i * L + l]; }
    std::span<const std::int64_t> row(std::size_t i) const { return {d.data() + i * L, L}; }
};

MultilayerGraph generate_naive(const WeightMatrix& w, const std::vector<LayerSpec>& layers,
                               RngStream& rng);
MultilayerGraph generate_fast(const WeightMatrix& w, const std::vector<LayerSpec>& layers,
                              RngStream& rng);

// D_il = sum over edges at i in layer l; self-loops counted once.
DegreeMatrix degrees(const MultilayerGraph& g);

// Rows of independent Poisson(c_l * W_il): the n -> infinity degree law.
DegreeMatrix sample_asymptotic_degrees(const WeightMatrix& w, std::span<const double> c,
                                       RngStream& rng);

// E[D_il | W] = sum_j g_l(W_il W_jl / T_l) for each layer l.
// For the identity kernel the sum telescopes to exactly slope * W_il.
std::vector<double> conditional_mean_degree(const WeightMatrix& w,
                                            const std::vector<LayerSpec>& layers,
                                            std::size_t i);

// TSV rows "layer<TAB>i<TAB>j<TAB>multiplicity", 1-based ids, sorted by (layer,i,j).
void write_edge_tsv(const MultilayerGraph& g, std::ostream& os);
void write_edge_tsv(const MultilayerGraph& g, const std::string& path);
MultilayerGraph read_edge_tsv(std::istream& is, std::int64_t n, std::size_t L);
MultilayerGraph read_edge_tsv(const std::string& path, std::int64_t n, std::size_t L);

// CSV "node,d1,...,dL" with 1-based node ids.
void write_degrees_csv(const DegreeMatrix& d, std::ostream& os);
void write_degrees_csv(const DegreeMatrix& d, const std::string& path);
DegreeMatrix read_degrees_csv(std::istream& is);
DegreeMatrix read_degrees_csv(const std::string& path);

}  // namespace mirg
