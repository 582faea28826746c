#pragma once

#include <string>
#include <vector>

namespace mirg {

/* Minimal deterministic SVG line charts: axes with ticks, one or more
 * polylines, optional filled quantile bands behind them.  Output depends only
 * on the data, so rerendering a deterministic experiment is byte-identical.
 */

struct SvgSeries {
    std::string label;
    std::string color = "#000000";
    std::vector<double> x, y;
    bool dashed = false;
};

struct SvgBand {
    std::string color;   // fill
    double opacity = 0.5;
    std::vector<double> x, lo, hi;
};

struct SvgChart {
    std::string title;
    std::string x_label = "k";
    std::string y_label;
    bool log_x = false;
    std::vector<SvgBand> bands;
    std::vector<SvgSeries> series;

    std::string render() const;
    void save(const std::string& path) const;
};

}  // namespace mirg
