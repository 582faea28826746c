#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "mirg/graph.hpp"
#include "mirg/weights.hpp"

using namespace mirg;

namespace {

WeightMatrix fixed_weights(std::size_t n, std::size_t L, double lo = 0.5, double step = 0.37) {
    WeightMatrix w;
    w.n = n;
    w.L = L;
    w.w.resize(n * L);
    for (std::size_t i = 0; i < n * L; ++i) w.w[i] = lo + step * static_cast<double>(i % 13);
    return w;
}

std::vector<LayerSpec> all_kernel_layers() {
    return {LayerSpec::parse("multi_edge:identity"), LayerSpec::parse("multi_edge:cap_one"),
            LayerSpec::parse("single_edge:odds"), LayerSpec::parse("single_edge:exp_complement")};
}

// per-layer sum of degrees, for conservation checks
std::int64_t degree_sum(const DegreeMatrix& d, std::size_t l) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < d.n; ++i) s += d(i, l);
    return s;
}

}  // namespace

TEST_CASE("connection functions") {
    const ConnectionFn id{ConnectionKind::identity};
    const ConnectionFn cap{ConnectionKind::cap_one};
    const ConnectionFn odds{ConnectionKind::odds};
    const ConnectionFn expc{ConnectionKind::exp_complement};

    CHECK(id(2.0) == 2.0);
    CHECK(cap(2.0) == 1.0);
    CHECK(cap(0.25) == 0.25);
    CHECK(odds(1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(expc(std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(id(-0.1), std::domain_error);

    // |g(x) - x| <= x^2 on a grid (the advertised envelope with M = nu = 1)
    for (const auto& g : {id, cap, odds, expc}) {
        for (double x = 0.0; x <= 3.0; x += 0.01) {
            CHECK(std::fabs(g(x) - x) <= x * x + 1e-15);
            if (g.bounded_by_one()) CHECK(g(x) <= 1.0);
        }
        CHECK(g.slope() == 1.0);
        CHECK(ConnectionFn::parse(g.name()).kind == g.kind);
    }
    CHECK_THROWS_AS(ConnectionFn::parse("squish"), std::invalid_argument);
}

TEST_CASE("layer spec parsing") {
    const auto a = LayerSpec::parse("multi_edge:identity");
    CHECK(a.kind == LayerKind::multi_edge);
    CHECK(a.g.kind == ConnectionKind::identity);
    const auto b = LayerSpec::parse("single:odds");  // short alias
    CHECK(b.kind == LayerKind::single_edge);
    CHECK_THROWS_AS(LayerSpec::parse("single_edge:identity"), std::invalid_argument);
    CHECK_THROWS_AS(LayerSpec::parse("multi_edge"), std::invalid_argument);
    CHECK_THROWS_AS(LayerSpec::parse("ring:odds"), std::invalid_argument);
}

TEST_CASE("generator input validation") {
    RngStream rng(31, 0);
    WeightMatrix w = fixed_weights(4, 2);
    CHECK_THROWS_AS(generate_fast(w, {LayerSpec::parse("multi:identity")}, rng),
                    std::invalid_argument);  // layer count != L

    WeightMatrix z = fixed_weights(4, 1);
    for (auto& v : z.w) v = 0.0;
    CHECK_THROWS_AS(generate_fast(z, {LayerSpec::parse("multi:identity")}, rng),
                    std::domain_error);  // zero layer total

    WeightMatrix neg = fixed_weights(4, 1);
    neg.w[2] = -1.0;
    CHECK_THROWS_AS(generate_fast(neg, {LayerSpec::parse("multi:identity")}, rng),
                    std::domain_error);
}

TEST_CASE("graphs are reproducible per stream and fresh per call") {
    const WeightMatrix w = fixed_weights(60, 2);
    const std::vector<LayerSpec> layers{LayerSpec::parse("multi:cap_one"),
                                        LayerSpec::parse("single:odds")};
    RngStream r1(32, 0), r2(32, 0);
    const auto g1 = generate_fast(w, layers, r1);
    const auto g2 = generate_fast(w, layers, r2);
    REQUIRE(g1.layers.size() == 2);
    for (std::size_t l = 0; l < 2; ++l) {
        REQUIRE(g1.layers[l].size() == g2.layers[l].size());
        for (std::size_t e = 0; e < g1.layers[l].size(); ++e) {
            CHECK(g1.layers[l][e].i == g2.layers[l][e].i);
            CHECK(g1.layers[l][e].j == g2.layers[l][e].j);
            CHECK(g1.layers[l][e].multiplicity == g2.layers[l][e].multiplicity);
        }
    }
    // a second draw from the same stream is a different graph
    const auto g3 = generate_fast(w, layers, r1);
    bool same = g3.layers[0].size() == g1.layers[0].size();
    if (same)
        for (std::size_t e = 0; e < g1.layers[0].size(); ++e)
            same = same && g1.layers[0][e].i == g3.layers[0][e].i &&
                   g1.layers[0][e].j == g3.layers[0][e].j &&
                   g1.layers[0][e].multiplicity == g3.layers[0][e].multiplicity;
    CHECK(!same);
}

TEST_CASE("edge lists are sorted, in range, and single layers are simple") {
    RngStream rng(33, 0);
    const WeightMatrix w = fixed_weights(120, 4, 0.3, 0.55);
    const auto g = generate_fast(w, all_kernel_layers(), rng);
    for (std::size_t l = 0; l < 4; ++l) {
        std::int64_t pi = -1, pj = -1;
        for (const auto& e : g.layers[l]) {
            CHECK(e.i >= 0);
            CHECK(e.i <= e.j);
            CHECK(e.j < g.n);
            CHECK(e.multiplicity >= 1);
            const bool advanced = (e.i > pi) || (e.i == pi && e.j > pj);
            CHECK(advanced);  // strictly sorted implies no duplicate cells
            pi = e.i;
            pj = e.j;
        }
        if (l >= 2)  // single-edge layers
            for (const auto& e : g.layers[l]) CHECK(e.multiplicity == 1);
    }
}

TEST_CASE("degrees count self-loops once and sum consistently") {
    MultilayerGraph g;
    g.n = 4;
    g.layers.resize(2);
    g.layers[0] = {{0, 0, 3}, {0, 2, 1}, {1, 2, 2}};
    g.layers[1] = {{2, 2, 1}, {3, 3, 1}};
    const auto d = degrees(g);
    REQUIRE(d.n == 4);
    REQUIRE(d.L == 2);
    CHECK(d(0, 0) == 4);  // 3 from the loop once, 1 to node 2
    CHECK(d(1, 0) == 2);
    CHECK(d(2, 0) == 3);
    CHECK(d(3, 0) == 0);
    CHECK(d(2, 1) == 1);
    CHECK(d(3, 1) == 1);

    // sum_i d_il = sum_e m_e * (2 - [loop])
    CHECK(degree_sum(d, 0) == 3 + 2 * 1 + 2 * 2);
    CHECK(degree_sum(d, 1) == 2);
    CHECK(g.total_multiplicity(0) == 6);
}

TEST_CASE("fast and naive generators agree in distribution") {
    const std::size_t n = 50;
    const int reps = 400;
    const WeightMatrix w = fixed_weights(n, 4, 0.2, 0.45);
    const auto layers = all_kernel_layers();

    // compare mean degree-sum per layer with a two-sample z test
    std::vector<double> fast_sum(4, 0), naive_sum(4, 0), fast_sq(4, 0), naive_sq(4, 0);
    for (int r = 0; r < reps; ++r) {
        RngStream rf(34, static_cast<std::uint64_t>(r));
        RngStream rn(35, static_cast<std::uint64_t>(r));
        const auto df = degrees(generate_fast(w, layers, rf));
        const auto dn = degrees(generate_naive(w, layers, rn));
        for (std::size_t l = 0; l < 4; ++l) {
            const auto f = static_cast<double>(degree_sum(df, l));
            const auto v = static_cast<double>(degree_sum(dn, l));
            fast_sum[l] += f;
            fast_sq[l] += f * f;
            naive_sum[l] += v;
            naive_sq[l] += v * v;
        }
    }
    for (std::size_t l = 0; l < 4; ++l) {
        const double mf = fast_sum[l] / reps, mn = naive_sum[l] / reps;
        const double vf = fast_sq[l] / reps - mf * mf;
        const double vn = naive_sq[l] / reps - mn * mn;
        const double z = (mf - mn) / std::sqrt((vf + vn) / reps);
        CAPTURE(l);
        CHECK(std::fabs(z) < 4.0);
    }
}

TEST_CASE("per-cell occupancy matches between generators on a tiny graph") {
    const std::size_t n = 5;
    const int reps = 4000;
    WeightMatrix w = fixed_weights(n, 2, 0.4, 0.8);
    const std::vector<LayerSpec> layers{LayerSpec::parse("multi:identity"),
                                        LayerSpec::parse("single:exp_complement")};
    std::map<std::tuple<std::size_t, std::int64_t, std::int64_t>, double> pf, pn;
    for (int r = 0; r < reps; ++r) {
        RngStream rf(36, static_cast<std::uint64_t>(r));
        RngStream rn(37, static_cast<std::uint64_t>(r));
        const auto gf = generate_fast(w, layers, rf);
        const auto gn = generate_naive(w, layers, rn);
        for (std::size_t l = 0; l < 2; ++l) {
            for (const auto& e : gf.layers[l]) pf[{l, e.i, e.j}] += 1.0;
            for (const auto& e : gn.layers[l]) pn[{l, e.i, e.j}] += 1.0;
        }
    }
    for (auto& [k, v] : pf) v /= reps;
    for (auto& [k, v] : pn) v /= reps;
    for (const auto& [k, p1] : pn) {
        const double p2 = pf.count(k) ? pf[k] : 0.0;
        const double se = std::sqrt(2.0 * std::max(p1 * (1 - p1), 1e-4) / reps);
        INFO("layer=", std::get<0>(k), " i=", std::get<1>(k), " j=", std::get<2>(k));
        CHECK(std::fabs(p1 - p2) < 4.5 * se);
    }
}

TEST_CASE("conditional mean degree telescopes for the identity kernel") {
    const WeightMatrix w = fixed_weights(80, 2, 0.1, 0.9);
    const std::vector<LayerSpec> layers{LayerSpec::parse("multi:identity"),
                                        LayerSpec::parse("multi:cap_one")};
    const auto totals = w.layer_totals();
    for (std::size_t i : {std::size_t{0}, std::size_t{17}, std::size_t{79}}) {
        const auto mu = conditional_mean_degree(w, layers, i);
        REQUIRE(mu.size() == 2);
        CHECK(mu[0] == doctest::Approx(w(i, 0)).epsilon(1e-12));
        // direct sum for the bounded kernel
        double s = 0;
        for (std::size_t j = 0; j < w.n; ++j)
            s += std::min(1.0, w(i, 1) * w(j, 1) / totals[1]);
        CHECK(mu[1] == doctest::Approx(s).epsilon(1e-12));
    }
}

TEST_CASE("asymptotic degrees are Poisson at the advertised rate") {
    RngStream rng(38, 0);
    WeightMatrix w;
    w.n = 40000;
    w.L = 2;
    w.w.assign(w.n * 2, 0.0);
    for (std::size_t i = 0; i < w.n; ++i) {
        w(i, 0) = 2.0;
        w(i, 1) = 0.7;
    }
    const std::vector<double> c{1.0, 3.0};
    const auto d = sample_asymptotic_degrees(w, c, rng);
    for (std::size_t l = 0; l < 2; ++l) {
        const double lam = c[l] * w(0, l);
        double m = 0, v = 0;
        for (std::size_t i = 0; i < w.n; ++i) m += static_cast<double>(d(i, l));
        m /= static_cast<double>(w.n);
        for (std::size_t i = 0; i < w.n; ++i) {
            const double dv = static_cast<double>(d(i, l)) - m;
            v += dv * dv;
        }
        v /= static_cast<double>(w.n - 1);
        CHECK(std::fabs(m - lam) < 4.0 * std::sqrt(lam / static_cast<double>(w.n)));
        CHECK(v == doctest::Approx(lam).epsilon(0.05));
    }
    const std::vector<double> bad{1.0};
    CHECK_THROWS_AS(sample_asymptotic_degrees(w, bad, rng), std::invalid_argument);
}

TEST_CASE("edge tsv round trip") {
    RngStream rng(39, 0);
    const WeightMatrix w = fixed_weights(40, 2);
    const std::vector<LayerSpec> layers{LayerSpec::parse("multi:identity"),
                                        LayerSpec::parse("single:odds")};
    const auto g = generate_fast(w, layers, rng);
    std::stringstream ss;
    write_edge_tsv(g, ss);
    const auto back = read_edge_tsv(ss, g.n, g.layers.size());
    REQUIRE(back.n == g.n);
    for (std::size_t l = 0; l < 2; ++l) {
        REQUIRE(back.layers[l].size() == g.layers[l].size());
        for (std::size_t e = 0; e < g.layers[l].size(); ++e) {
            CHECK(back.layers[l][e].i == g.layers[l][e].i);
            CHECK(back.layers[l][e].j == g.layers[l][e].j);
            CHECK(back.layers[l][e].multiplicity == g.layers[l][e].multiplicity);
        }
    }
    std::stringstream bad("7\t1\t2\t1\n");
    CHECK_THROWS_AS(read_edge_tsv(bad, 40, 2), std::runtime_error);
}

TEST_CASE("degrees csv round trip") {
    DegreeMatrix d;
    d.n = 3;
    d.L = 2;
    d.d = {0, 5, 2, 1, 7, 0};
    std::stringstream ss;
    write_degrees_csv(d, ss);
    const auto back = read_degrees_csv(ss);
    REQUIRE(back.n == 3);
    REQUIRE(back.L == 2);
    for (std::size_t i = 0; i < 6; ++i) CHECK(back.d[i] == d.d[i]);
}
