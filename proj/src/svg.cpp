#include "mirg/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mirg {

namespace {

constexpr double W = 720, H = 440;
constexpr double ML = 72, MR = 24, MT = 40, MB = 52;  // margins

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Scale {
    double lo = 0, hi = 1;
    bool log = false;
    double a, b;  // pixel range

    double operator()(double v) const {
        double t = log ? std::log10(v) : v;
        double tlo = log ? std::log10(lo) : lo;
        double thi = log ? std::log10(hi) : hi;
        if (thi == tlo) return 0.5 * (a + b);
        return a + (t - tlo) / (thi - tlo) * (b - a);
    }
};

void expand(double v, double& lo, double& hi) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
}

std::vector<double> linear_ticks(double lo, double hi, int want = 6) {
    if (!(hi > lo)) return {lo};
    const double raw = (hi - lo) / want;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    std::vector<double> t;
    for (double v = std::ceil(lo / step) * step; v <= hi + step * 1e-9; v += step)
        t.push_back(std::fabs(v) < step * 1e-9 ? 0.0 : v);
    return t;
}

std::vector<double> log_ticks(double lo, double hi) {
    std::vector<double> t;
    for (int e = static_cast<int>(std::floor(std::log10(lo)));
         e <= static_cast<int>(std::ceil(std::log10(hi))); ++e) {
        const double v = std::pow(10.0, e);
        if (v >= lo * (1 - 1e-12) && v <= hi * (1 + 1e-12)) t.push_back(v);
    }
    if (t.empty()) t = {lo, hi};
    return t;
}

}  // namespace

std::string SvgChart::render() const {
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    auto eat = [&](const std::vector<double>& xs, const std::vector<double>& ys) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) continue;
            expand(xs[i], xlo, xhi);
            expand(ys[i], ylo, yhi);
        }
    };
    for (const auto& s : series) eat(s.x, s.y);
    for (const auto& b : bands) {
        eat(b.x, b.lo);
        eat(b.x, b.hi);
    }
    if (xlo > xhi) {
        xlo = 0;
        xhi = 1;
        ylo = 0;
        yhi = 1;
    }
    if (ylo == yhi) {
        ylo -= 1;
        yhi += 1;
    }
    const double ypad = 0.05 * (yhi - ylo);
    ylo -= ypad;
    yhi += ypad;

    Scale sx{xlo, xhi, log_x, ML, W - MR};
    Scale sy{ylo, yhi, false, H - MB, MT};  // y grows upward

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"#ffffff\"/>\n";
    if (!title.empty())
        os << "<text x=\"" << num(W / 2) << "\" y=\"24\" text-anchor=\"middle\" "
              "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

    for (const auto& b : bands) {
        if (b.x.empty()) continue;
        os << "<polygon fill=\"" << b.color << "\" fill-opacity=\"" << b.opacity
           << "\" stroke=\"none\" points=\"";
        for (std::size_t i = 0; i < b.x.size(); ++i)
            os << num(sx(b.x[i])) << ',' << num(sy(b.hi[i])) << ' ';
        for (std::size_t i = b.x.size(); i-- > 0;)
            os << num(sx(b.x[i])) << ',' << num(sy(b.lo[i])) << ' ';
        os << "\"/>\n";
    }

    // axes
    os << "<line x1=\"" << num(ML) << "\" y1=\"" << num(H - MB) << "\" x2=\"" << num(W - MR)
       << "\" y2=\"" << num(H - MB) << "\" stroke=\"#000\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << num(ML) << "\" y1=\"" << num(MT) << "\" x2=\"" << num(ML)
       << "\" y2=\"" << num(H - MB) << "\" stroke=\"#000\" stroke-width=\"1\"/>\n";

    const auto xticks = log_x ? log_ticks(xlo, xhi) : linear_ticks(xlo, xhi);
    for (double v : xticks) {
        const double px = sx(v);
        os << "<line x1=\"" << num(px) << "\" y1=\"" << num(H - MB) << "\" x2=\"" << num(px)
           << "\" y2=\"" << num(H - MB + 5) << "\" stroke=\"#000\"/>\n";
        os << "<text x=\"" << num(px) << "\" y=\"" << num(H - MB + 20)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
           << tick_label(v) << "</text>\n";
    }
    for (double v : linear_ticks(ylo, yhi)) {
        const double py = sy(v);
        os << "<line x1=\"" << num(ML - 5) << "\" y1=\"" << num(py) << "\" x2=\"" << num(ML)
           << "\" y2=\"" << num(py) << "\" stroke=\"#000\"/>\n";
        os << "<text x=\"" << num(ML - 8) << "\" y=\"" << num(py + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
           << tick_label(v) << "</text>\n";
    }
    if (!x_label.empty())
        os << "<text x=\"" << num((ML + W - MR) / 2) << "\" y=\"" << num(H - 12)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_label
           << "</text>\n";
    if (!y_label.empty())
        os << "<text x=\"16\" y=\"" << num((MT + H - MB) / 2)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
              "transform=\"rotate(-90 16 " << num((MT + H - MB) / 2) << ")\">" << y_label
           << "</text>\n";

    double legend_y = MT + 6;
    for (const auto& s : series) {
        if (s.x.empty()) continue;
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
        if (s.dashed) os << " stroke-dasharray=\"6 4\"";
        os << " points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            os << num(sx(s.x[i])) << ',' << num(sy(s.y[i])) << ' ';
        }
        os << "\"/>\n";
        if (!s.label.empty()) {
            os << "<line x1=\"" << num(W - MR - 150) << "\" y1=\"" << num(legend_y)
               << "\" x2=\"" << num(W - MR - 126) << "\" y2=\"" << num(legend_y)
               << "\" stroke=\"" << s.color << "\" stroke-width=\"1.5\""
               << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
            os << "<text x=\"" << num(W - MR - 120) << "\" y=\"" << num(legend_y + 4)
               << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
            legend_y += 16;
        }
    }
    os << "</svg>\n";
    return os.str();
}

void SvgChart::save(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << render();
    if (!os.good()) throw std::runtime_error("write failed: " + path);
}

}  // namespace mirg
