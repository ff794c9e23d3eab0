// svg_plot.hpp — small self-contained SVG renderers for the CSV artifacts

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace otoc::plot {

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string label;
    std::string color; // css color
    bool points_only = false;
};

struct Axes {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<double> v_marks; // vertical reference lines
};

void write_line_svg(const std::filesystem::path& path, const Axes& axes,
                    const std::vector<Series>& series);

// values(i, j) drawn at (xs[i], ys[j]); NaN cells stay light gray. overlay
// is an optional curve in data coordinates.
void write_heatmap_svg(const std::filesystem::path& path, const Axes& axes,
                       const std::vector<double>& xs, const std::vector<double>& ys,
                       const std::vector<std::vector<double>>& values,
                       const Series* overlay = nullptr);

} // namespace otoc::plot
