#include "mirg/evt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace mirg {

namespace {

void check_norm_order(double p) {
    if (std::isinf(p) && p > 0) return;
    if (!(p >= 1))
        throw std::invalid_argument("norms: order must satisfy p >= 1 (or infinity)");
}

template <typename Get>
RadiusVector row_norms(std::size_t n, std::size_t L, double p, Get get) {
    check_norm_order(p);
    RadiusVector r;
    r.p = p;
    r.values.resize(n);
    const bool inf = std::isinf(p);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0;
        for (std::size_t l = 0; l < L; ++l) {
            const double x = std::fabs(get(i, l));
            if (inf)
                acc = std::max(acc, x);
            else if (p == 1.0)
                acc += x;
            else
                acc += std::pow(x, p);
        }
        r.values[i] = (inf || p == 1.0) ? acc : std::pow(acc, 1.0 / p);
    }
    return r;
}

}  // namespace

RadiusVector norms(const DegreeMatrix& d, double p) {
    return row_norms(d.n, d.L, p,
                     [&](std::size_t i, std::size_t l) { return static_cast<double>(d(i, l)); });
}

RadiusVector norms(const WeightMatrix& w, double p) {
    return row_norms(w.n, w.L, p, [&](std::size_t i, std::size_t l) { return w(i, l); });
}

TailIndexEstimate hill(std::span<const double> values, std::size_t k) {
    const std::size_t n = values.size();
    if (k < 1) throw std::out_of_range("hill: k must be >= 1");
    if (k + 1 > n)
        throw std::out_of_range("hill: needs k+1 order statistics, have n=" +
                                std::to_string(n));
    std::vector<double> top(values.begin(), values.end());
    std::partial_sort(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(k + 1), top.end(),
                      std::greater<>());
    const double pivot = top[k];
    if (!(pivot > 0))
        throw std::domain_error("hill: degenerate tail, the (k+1)-th largest value is not > 0");
    double h = 0;
    for (std::size_t i = 0; i < k; ++i) h += std::log(top[i] / pivot);
    h /= static_cast<double>(k);
    TailIndexEstimate est;
    est.k = k;
    est.hill = h;
    if (h > 0) est.alpha_hat = 1.0 / h;
    return est;
}

TailIndexEstimate hill(const RadiusVector& r, std::size_t k) { return hill(r.values, k); }

double empirical_quantile(std::span<const double> values, double t) {
    if (values.empty()) throw std::invalid_argument("empirical_quantile: empty sample");
    if (!(t > 1)) throw std::invalid_argument("empirical_quantile: t must be > 1");
    const auto n = static_cast<double>(values.size());
    auto rank = static_cast<std::size_t>(std::ceil(n / t));  // >= 1 since n/t > 0
    rank = std::min(std::max<std::size_t>(rank, 1), values.size());
    std::vector<double> v(values.begin(), values.end());
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(rank - 1), v.end(),
                     std::greater<>());
    return v[rank - 1];
}

double tail_empirical_measure(std::span<const double> values, std::size_t k, double scale,
                              double y) {
    if (k < 1) throw std::invalid_argument("tail_empirical_measure: k must be >= 1");
    if (!(scale > 0)) throw std::invalid_argument("tail_empirical_measure: scale must be > 0");
    std::size_t count = 0;
    for (double v : values)
        if (v / scale > y) ++count;
    return static_cast<double>(count) / static_cast<double>(k);
}

std::size_t select_kn(std::size_t n, double alpha, double kappa) {
    if (n < 2) throw std::invalid_argument("select_kn: n must be >= 2");
    if (!(alpha > 1)) throw std::invalid_argument("select_kn: alpha must be > 1");
    const double hi = (alpha - 1.0) / alpha;
    if (!(kappa > 0) || !(kappa < hi)) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "select_kn: kappa must lie in (0, %g) for alpha=%g", hi,
                      alpha);
        throw std::invalid_argument(msg);
    }
    const double k = std::ceil(std::pow(static_cast<double>(n), 1.0 / alpha + kappa));
    const auto kc = static_cast<std::size_t>(k);
    return std::min(std::max<std::size_t>(kc, 1), n - 1);
}

namespace {

// Positions of the k largest xi (descending; ties by original index), i.e. the
// concomitant order used by hillish.
std::vector<std::uint32_t> top_k_by_xi(std::span<const double> xi, std::size_t k) {
    std::vector<std::uint32_t> idx(xi.size());
    std::iota(idx.begin(), idx.end(), 0u);
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                      [&](std::uint32_t a, std::uint32_t b) {
                          return xi[a] != xi[b] ? xi[a] > xi[b] : a < b;
                      });
    idx.resize(k);
    return idx;
}

// hillish value at one k given the first max_k concomitant eta values
// (eta_conc[i] belongs to the (i+1)-th largest xi).
double hillish_at(std::span<const double> eta_conc, std::size_t k) {
    // rank eta_conc[0..k) descending; ties keep xi order (stable)
    std::vector<std::uint32_t> ord(k);
    std::iota(ord.begin(), ord.end(), 0u);
    std::stable_sort(ord.begin(), ord.end(), [&](std::uint32_t a, std::uint32_t b) {
        return eta_conc[a] > eta_conc[b];
    });
    std::vector<std::uint32_t> rank(k);
    for (std::uint32_t r = 0; r < k; ++r) rank[ord[r]] = r + 1;

    const double kd = static_cast<double>(k);
    double acc = 0;
    for (std::size_t i = 0; i < k; ++i)
        acc += std::log(kd / static_cast<double>(i + 1)) * std::log(kd / rank[i]);
    return acc / kd;
}

}  // namespace

double hillish(std::span<const double> xi, std::span<const double> eta, std::size_t k) {
    std::vector<std::size_t> ks{k};
    return hillish_pair(xi, eta, ks).first.values.at(0);
}

std::pair<HillishTrace, HillishTrace> hillish_pair(std::span<const double> xi,
                                                   std::span<const double> eta,
                                                   const std::vector<std::size_t>& ks) {
    if (xi.size() != eta.size())
        throw std::invalid_argument("hillish: xi and eta must have equal length");
    if (ks.empty()) throw std::invalid_argument("hillish: empty k list");
    for (std::size_t k : ks)
        if (k < 1 || k > xi.size())
            throw std::out_of_range("hillish: every k must satisfy 1 <= k <= n");
    if (!std::is_sorted(ks.begin(), ks.end()))
        throw std::invalid_argument("hillish: k list must be ascending");

    const std::size_t kmax = ks.back();
    const std::vector<std::uint32_t> idx = top_k_by_xi(xi, kmax);
    std::vector<double> conc_pos(kmax), conc_neg(kmax);
    for (std::size_t i = 0; i < kmax; ++i) {
        conc_pos[i] = eta[idx[i]];
        conc_neg[i] = -eta[idx[i]];
    }

    HillishTrace pos, neg;
    pos.ks = ks;
    neg.ks = ks;
    neg.negated_eta = true;
    pos.values.reserve(ks.size());
    neg.values.reserve(ks.size());
    for (std::size_t k : ks) {
        pos.values.push_back(hillish_at(conc_pos, k));
        neg.values.push_back(hillish_at(conc_neg, k));
    }
    return {std::move(pos), std::move(neg)};
}

void write_hill_csv(std::span<const TailIndexEstimate> rows, std::ostream& os) {
    os << "k,hill,alpha_hat\n";
    char buf[40];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.6g", r.hill);
        os << r.k << ',' << buf << ',';
        if (r.alpha_hat) {
            std::snprintf(buf, sizeof buf, "%.6g", *r.alpha_hat);
            os << buf;
        }
        os << "\n";
    }
}

void write_hillish_csv(const HillishTrace& pos, const HillishTrace& neg, std::ostream& os) {
    if (pos.ks != neg.ks)
        throw std::invalid_argument("write_hillish_csv: traces evaluated on different k lists");
    os << "k,hillish_pos,hillish_neg\n";
    char b1[40], b2[40];
    for (std::size_t i = 0; i < pos.ks.size(); ++i) {
        std::snprintf(b1, sizeof b1, "%.6g", pos.values[i]);
        std::snprintf(b2, sizeof b2, "%.6g", neg.values[i]);
        os << pos.ks[i] << ',' << b1 << ',' << b2 << "\n";
    }
}

}  // namespace mirg
