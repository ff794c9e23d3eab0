#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "otoclab/io.hpp"

namespace otoc::plot {

namespace {

constexpr double kWidth = 840, kHeight = 560;
constexpr double kLeft = 84, kRight = 36, kTop = 48, kBottom = 64;

struct Scale {
    double lo = 0, hi = 1;
    bool log = false;
    double px0 = 0, px1 = 1;

    double operator()(double v) const {
        const double t = log ? (std::log10(v) - std::log10(lo)) /
                                   (std::log10(hi) - std::log10(lo))
                             : (v - lo) / (hi - lo);
        return px0 + t * (px1 - px0);
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else out += c;
    }
    return out;
}

void span_of(const std::vector<Series>& series, bool log_x, bool log_y, double& x0,
             double& x1, double& y0, double& y1) {
    x0 = y0 = std::numeric_limits<double>::infinity();
    x1 = y1 = -std::numeric_limits<double>::infinity();
    for (const Series& s : series)
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            const double x = s.x[k], y = s.y[k];
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (log_x && x <= 0) continue;
            if (log_y && y <= 0) continue;
            x0 = std::min(x0, x); x1 = std::max(x1, x);
            y0 = std::min(y0, y); y1 = std::max(y1, y);
        }
    if (!std::isfinite(x0)) { x0 = 0; x1 = 1; y0 = 0; y1 = 1; }
    if (x0 == x1) { x0 -= 0.5; x1 += 0.5; }
    if (y0 == y1) { y0 -= 0.5; y1 += 0.5; }
    if (!log_y) {
        const double pad = 0.05 * (y1 - y0);
        y0 -= pad; y1 += pad;
    }
}

std::vector<double> ticks(double lo, double hi, bool log) {
    std::vector<double> out;
    if (log) {
        for (int e = int(std::floor(std::log10(lo))); e <= int(std::ceil(std::log10(hi))); ++e)
            if (std::pow(10.0, e) >= lo * 0.999 && std::pow(10.0, e) <= hi * 1.001)
                out.push_back(std::pow(10.0, e));
        if (out.size() < 2) { out = {lo, hi}; }
        return out;
    }
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
        if (raw <= m * mag) { step = m * mag; break; }
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step)
        out.push_back(v);
    return out;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

void frame(std::ostringstream& svg, const Axes& axes, const Scale& sx, const Scale& sy) {
    svg << "<rect x='" << kLeft << "' y='" << kTop << "' width='" << kWidth - kLeft - kRight
        << "' height='" << kHeight - kTop - kBottom
        << "' fill='none' stroke='#333' stroke-width='1'/>\n";
    for (double t : ticks(sx.lo, sx.hi, sx.log)) {
        const double px = sx(t);
        svg << "<line x1='" << px << "' y1='" << kHeight - kBottom << "' x2='" << px
            << "' y2='" << kHeight - kBottom + 6 << "' stroke='#333'/>\n"
            << "<text x='" << px << "' y='" << kHeight - kBottom + 22
            << "' font-size='13' text-anchor='middle'>" << fmt(t) << "</text>\n";
    }
    for (double t : ticks(sy.lo, sy.hi, sy.log)) {
        const double py = sy(t);
        svg << "<line x1='" << kLeft - 6 << "' y1='" << py << "' x2='" << kLeft << "' y2='"
            << py << "' stroke='#333'/>\n"
            << "<text x='" << kLeft - 10 << "' y='" << py + 4
            << "' font-size='13' text-anchor='end'>" << fmt(t) << "</text>\n";
    }
    svg << "<text x='" << (kLeft + kWidth - kRight) / 2 << "' y='" << kHeight - 18
        << "' font-size='15' text-anchor='middle'>" << esc(axes.x_label) << "</text>\n"
        << "<text x='20' y='" << (kTop + kHeight - kBottom) / 2
        << "' font-size='15' text-anchor='middle' transform='rotate(-90 20 "
        << (kTop + kHeight - kBottom) / 2 << ")'>" << esc(axes.y_label) << "</text>\n"
        << "<text x='" << (kLeft + kWidth - kRight) / 2 << "' y='28'"
        << " font-size='17' text-anchor='middle'>" << esc(axes.title) << "</text>\n";
}

// simple blue -> yellow heat ramp
std::string heat_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const int r = int(255 * std::clamp(1.6 * t - 0.1, 0.0, 1.0));
    const int g = int(255 * std::clamp(1.4 * t, 0.0, 1.0) * 0.9);
    const int b = int(255 * std::clamp(0.9 - 1.1 * t, 0.05, 0.9));
    std::ostringstream os;
    os << "rgb(" << r << ',' << g << ',' << b << ')';
    return os.str();
}

} // namespace

void write_line_svg(const std::filesystem::path& path, const Axes& axes,
                    const std::vector<Series>& series) {
    double x0, x1, y0, y1;
    span_of(series, axes.log_x, axes.log_y, x0, x1, y0, y1);
    const Scale sx{x0, x1, axes.log_x, kLeft, kWidth - kRight};
    const Scale sy{y0, y1, axes.log_y, kHeight - kBottom, kTop};

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='"
        << kHeight << "' viewBox='0 0 " << kWidth << ' ' << kHeight << "'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n";
    frame(svg, axes, sx, sy);

    for (double mark : axes.v_marks) {
        if (mark < x0 || mark > x1) continue;
        svg << "<line x1='" << sx(mark) << "' y1='" << sy.px1 << "' x2='" << sx(mark)
            << "' y2='" << sy.px0 << "' stroke='#999' stroke-dasharray='6 4'/>\n";
    }

    int color_index = 0;
    double legend_y = kTop + 18;
    for (const Series& s : series) {
        const std::string color =
            s.color.empty() ? kPalette[color_index++ % 8] : s.color;
        if (s.points_only) {
            for (std::size_t k = 0; k < s.x.size(); ++k) {
                if (!std::isfinite(s.y[k])) continue;
                if (axes.log_x && s.x[k] <= 0) continue;
                if (axes.log_y && s.y[k] <= 0) continue;
                svg << "<circle cx='" << sx(s.x[k]) << "' cy='" << sy(s.y[k])
                    << "' r='3' fill='" << color << "'/>\n";
            }
        } else {
            svg << "<polyline fill='none' stroke='" << color << "' stroke-width='1.6' points='";
            for (std::size_t k = 0; k < s.x.size(); ++k) {
                if (!std::isfinite(s.y[k])) continue;
                if (axes.log_x && s.x[k] <= 0) continue;
                if (axes.log_y && s.y[k] <= 0) continue;
                svg << fmt(sx(s.x[k])) << ',' << fmt(sy(s.y[k])) << ' ';
            }
            svg << "'/>\n";
        }
        if (!s.label.empty()) {
            svg << "<rect x='" << kWidth - kRight - 180 << "' y='" << legend_y - 10
                << "' width='14' height='4' fill='" << color << "'/>\n"
                << "<text x='" << kWidth - kRight - 160 << "' y='" << legend_y
                << "' font-size='13'>" << esc(s.label) << "</text>\n";
            legend_y += 18;
        }
    }
    svg << "</svg>\n";

    std::ofstream os(path);
    if (!os) throw io_error("cannot write " + path.string());
    os << svg.str();
    if (!os.flush()) throw io_error("write failed: " + path.string());
}

void write_heatmap_svg(const std::filesystem::path& path, const Axes& axes,
                       const std::vector<double>& xs, const std::vector<double>& ys,
                       const std::vector<std::vector<double>>& values,
                       const Series* overlay) {
    if (xs.empty() || ys.empty() || values.size() != xs.size())
        throw io_error("heatmap: inconsistent grid");

    double v_lo = std::numeric_limits<double>::infinity(), v_hi = -v_lo;
    for (const auto& col : values)
        for (double v : col)
            if (std::isfinite(v)) { v_lo = std::min(v_lo, v); v_hi = std::max(v_hi, v); }
    if (!std::isfinite(v_lo) || v_lo == v_hi) { v_lo = 0; v_hi = 1; }

    const double x0 = xs.front(), x1 = xs.back();
    const double y0 = ys.front(), y1 = ys.back();
    const Scale sx{x0, x1, false, kLeft, kWidth - kRight};
    const Scale sy{y0, y1, false, kHeight - kBottom, kTop};

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='"
        << kHeight << "' viewBox='0 0 " << kWidth << ' ' << kHeight << "'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n";

    const double cw = (kWidth - kLeft - kRight) / xs.size();
    const double ch = (kHeight - kTop - kBottom) / ys.size();
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ys.size(); ++j) {
            const double v = values[i][j];
            const std::string color =
                std::isfinite(v) ? heat_color((v - v_lo) / (v_hi - v_lo)) : "#dddddd";
            svg << "<rect x='" << fmt(kLeft + i * cw) << "' y='"
                << fmt(kHeight - kBottom - (j + 1) * ch) << "' width='" << fmt(cw + 0.5)
                << "' height='" << fmt(ch + 0.5) << "' fill='" << color << "'/>\n";
        }

    frame(svg, axes, sx, sy);
    if (overlay != nullptr) {
        svg << "<polyline fill='none' stroke='white' stroke-width='2' "
               "stroke-dasharray='8 5' points='";
        for (std::size_t k = 0; k < overlay->x.size(); ++k) {
            const double y = overlay->y[k];
            if (y < std::min(y0, y1) || y > std::max(y0, y1)) continue;
            svg << fmt(sx(overlay->x[k])) << ',' << fmt(sy(y)) << ' ';
        }
        svg << "'/>\n";
    }
    svg << "</svg>\n";

    std::ofstream os(path);
    if (!os) throw io_error("cannot write " + path.string());
    os << svg.str();
    if (!os.flush()) throw io_error("write failed: " + path.string());
}

} // namespace otoc::plot
