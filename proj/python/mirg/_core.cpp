#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "mirg/cones.hpp"
#include "mirg/evt.hpp"
#include "mirg/experiments.hpp"
#include "mirg/graph.hpp"
#include "mirg/weights.hpp"

namespace py = pybind11;
using namespace mirg;

namespace {

WeightModelSpec model_from(const std::string& name, double alpha,
                           std::optional<double> alpha0) {
    if (name == "single_factor") return WeightModelSpec::single_factor(alpha);
    if (name == "full_dependence") return WeightModelSpec::full_dependence(alpha);
    if (name == "hrv_mixture") {
        if (!alpha0) throw std::invalid_argument("hrv_mixture needs alpha0");
        return WeightModelSpec::hrv_mixture(alpha, *alpha0);
    }
    throw std::invalid_argument("unknown weight model: " + name);
}

std::vector<LayerSpec> layers_from(const std::vector<std::string>& tokens) {
    std::vector<LayerSpec> out;
    for (const auto& t : tokens) out.push_back(LayerSpec::parse(t));
    return out;
}

DegreeMatrix degree_matrix_from(const std::vector<std::vector<std::int64_t>>& rows) {
    DegreeMatrix d;
    d.n = rows.size();
    d.L = rows.empty() ? 0 : rows[0].size();
    if (d.n == 0 || d.L == 0) throw std::invalid_argument("degrees must be a nonempty matrix");
    d.d.reserve(d.n * d.L);
    for (const auto& r : rows) {
        if (r.size() != d.L) throw std::invalid_argument("ragged degree matrix");
        d.d.insert(d.d.end(), r.begin(), r.end());
    }
    return d;
}

std::vector<std::vector<std::int64_t>> degree_rows(const DegreeMatrix& d) {
    std::vector<std::vector<std::int64_t>> rows(d.n);
    for (std::size_t i = 0; i < d.n; ++i) rows[i].assign(d.row(i).begin(), d.row(i).end());
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "simulation and tail estimation for multilayer heavy-tailed random graphs";

    m.def(
        "simulate_degrees",
        [](std::size_t n, double alpha, const std::vector<std::string>& layers,
           const std::string& model, std::optional<double> alpha0, std::uint64_t seed) {
            RngStream rng(seed, 0);
            const auto w = sample_weights(model_from(model, alpha, alpha0), n, rng);
            const auto g = generate_fast(w, layers_from(layers), rng);
            return degree_rows(degrees(g));
        },
        py::arg("n"), py::arg("alpha"),
        py::arg("layers") = std::vector<std::string>{"multi_edge:cap_one", "single_edge:odds"},
        py::arg("model") = "single_factor", py::arg("alpha0") = std::nullopt,
        py::arg("seed") = 1,
        "sample weights, generate a graph, and return its n x L degree matrix");

    m.def(
        "generate_edges",
        [](std::size_t n, double alpha, const std::vector<std::string>& layers,
           const std::string& model, std::optional<double> alpha0, std::uint64_t seed) {
            RngStream rng(seed, 0);
            const auto w = sample_weights(model_from(model, alpha, alpha0), n, rng);
            const auto g = generate_fast(w, layers_from(layers), rng);
            std::vector<std::tuple<std::size_t, std::int64_t, std::int64_t, std::int64_t>> out;
            for (std::size_t l = 0; l < g.layers.size(); ++l)
                for (const auto& e : g.layers[l]) out.emplace_back(l, e.i, e.j, e.multiplicity);
            return out;
        },
        py::arg("n"), py::arg("alpha"),
        py::arg("layers") = std::vector<std::string>{"multi_edge:cap_one", "single_edge:odds"},
        py::arg("model") = "single_factor", py::arg("alpha0") = std::nullopt,
        py::arg("seed") = 1, "edge list as (layer, i, j, multiplicity) tuples, 0-based");

    m.def(
        "norms",
        [](const std::vector<std::vector<std::int64_t>>& rows, double p) {
            return mirg::norms(degree_matrix_from(rows), p).values;
        },
        py::arg("degrees"), py::arg("p") = 1.0, "row p-norms of a degree matrix");

    m.def(
        "hill",
        [](const std::vector<double>& values, std::size_t k) {
            const auto est = mirg::hill(values, k);
            return py::make_tuple(est.hill, est.alpha_hat ? py::cast(*est.alpha_hat)
                                                          : py::none());
        },
        py::arg("values"), py::arg("k"),
        "(hill statistic, implied tail index or None) over the top k order statistics");

    m.def(
        "hillish_pair",
        [](const std::vector<double>& xi, const std::vector<double>& eta,
           const std::vector<std::size_t>& ks) {
            const auto [pos, neg] = mirg::hillish_pair(xi, eta, ks);
            return py::make_tuple(pos.values, neg.values);
        },
        py::arg("xi"), py::arg("eta"), py::arg("ks"),
        "rank statistic traces for (xi, eta) and (xi, -eta)");

    m.def(
        "xi_eta",
        [](const std::vector<std::vector<std::int64_t>>& rows, double slope) {
            const auto c = mirg::xi_eta(degree_matrix_from(rows), slope);
            const auto [xi, eta] = c.compact();
            return py::make_tuple(xi, eta, c.excluded_count);
        },
        py::arg("degrees"), py::arg("slope") = 1.5,
        "(xi, eta, excluded_count) wedge coordinates of a two-layer degree matrix");

    m.def("select_kn", &select_kn, py::arg("n"), py::arg("alpha"), py::arg("kappa"),
          "intermediate order-statistic count ceil(n^(1/alpha + kappa)), clamped");

    m.def("example31_limit", &example31_limit, py::arg("u"), py::arg("v"), py::arg("alpha"),
          "closed-form joint tail limit of the fully dependent two-layer example");

    m.def(
        "wedge_distance",
        [](double x1, double x2, double lower, double upper) {
            const std::vector<double> x{x1, x2};
            return distance_to_cone(x, ConeSpec::wedge(lower, upper), 2.0);
        },
        py::arg("x1"), py::arg("x2"), py::arg("lower") = 0.5, py::arg("upper") = 1.5,
        "euclidean distance from a point to the wedge cone");
}
