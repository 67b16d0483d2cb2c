#include "twpa/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace twpa {

namespace {

constexpr int kWidth = 860;
constexpr int kHeight = 560;
constexpr int kMarginLeft = 80;
constexpr int kMarginRight = 40;
constexpr int kMarginTop = 50;
constexpr int kMarginBottom = 65;
constexpr int kColorbarWidth = 18;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;

    double clamp01(double v) const { return std::clamp((v - lo) / (hi - lo), 0.0, 1.0); }
};

Range pad_range(double lo, double hi) {
    if (!(hi > lo)) {
        const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
        return Range{lo - pad, hi + pad};
    }
    const double pad = (hi - lo) * 0.05;
    return Range{lo - pad, hi + pad};
}

/// Round tick positions covering the range.
std::vector<double> ticks(const Range& r, int target = 6) {
    const double span = r.hi - r.lo;
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) { step = m * mag; break; }
    }
    std::vector<double> out;
    double t = std::ceil(r.lo / step) * step;
    for (; t <= r.hi + step * 1e-9; t += step) out.push_back(t == 0.0 ? 0.0 : t);
    return out;
}

/// Compact approximation of the viridis colormap.
std::string viridis(double t) {
    static const double stops[][3] = {
        {68, 1, 84},    {71, 44, 122},  {59, 81, 139},  {44, 113, 142}, {33, 144, 141},
        {39, 173, 129}, {92, 200, 99},  {170, 220, 50}, {253, 231, 37},
    };
    t = std::clamp(t, 0.0, 1.0);
    const int n = 8;
    const double s = t * n;
    const int i = std::min(static_cast<int>(s), n - 1);
    const double f = s - i;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                  static_cast<int>(std::lround(stops[i][0] + f * (stops[i + 1][0] - stops[i][0]))),
                  static_cast<int>(std::lround(stops[i][1] + f * (stops[i + 1][1] - stops[i][1]))),
                  static_cast<int>(std::lround(stops[i][2] + f * (stops[i + 1][2] - stops[i][2]))));
    return buf;
}

void open_svg(std::ostringstream& out, const std::vector<std::string>& config_echo) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<!-- resolved configuration:\n";
    for (const std::string& line : config_echo) out << "  " << escape(line) << "\n";
    out << "-->\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
}

void draw_frame(std::ostringstream& out, const std::string& title, const std::string& x_label,
                const std::string& y_label, const Range& xr, const Range& yr, int plot_right) {
    const int x0 = kMarginLeft, y0 = kMarginTop;
    const int x1 = plot_right, y1 = kHeight - kMarginBottom;
    out << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << x1 - x0 << "\" height=\""
        << y1 - y0 << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"28\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << escape(title) << "</text>\n";
    out << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape(x_label) << "</text>\n";
    out << "<text x=\"22\" y=\"" << (y0 + y1) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 22 " << (y0 + y1) / 2 << ")\">" << escape(y_label)
        << "</text>\n";

    for (double t : ticks(xr)) {
        const double px = x0 + xr.clamp01(t) * (x1 - x0);
        out << "<line x1=\"" << fmt(px) << "\" y1=\"" << y1 << "\" x2=\"" << fmt(px)
            << "\" y2=\"" << y1 + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fmt(px) << "\" y=\"" << y1 + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(t) << "</text>\n";
    }
    for (double t : ticks(yr)) {
        const double py = y1 - yr.clamp01(t) * (y1 - y0);
        out << "<line x1=\"" << x0 - 5 << "\" y1=\"" << fmt(py) << "\" x2=\"" << x0
            << "\" y2=\"" << fmt(py) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << x0 - 8 << "\" y=\"" << fmt(py + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(t) << "</text>\n";
    }
}

} // namespace

std::string render_line_plot(const SvgLinePlot& plot,
                             const std::vector<std::string>& config_echo) {
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const SvgSeries& s : plot.series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i])) continue;
            x_lo = std::min(x_lo, s.x[i]);
            x_hi = std::max(x_hi, s.x[i]);
            y_lo = std::min(y_lo, s.y[i]);
            y_hi = std::max(y_hi, s.y[i]);
        }
    }
    if (!std::isfinite(x_lo)) { x_lo = 0.0; x_hi = 1.0; y_lo = 0.0; y_hi = 1.0; }
    const Range xr{x_lo, x_hi};
    const Range yr = pad_range(y_lo, y_hi);

    const int x0 = kMarginLeft, y0 = kMarginTop;
    const int x1 = kWidth - kMarginRight, y1 = kHeight - kMarginBottom;

    std::ostringstream out;
    open_svg(out, config_echo);
    draw_frame(out, plot.title, plot.x_label, plot.y_label, xr, yr, x1);

    for (const SvgSeries& s : plot.series) {
        // polyline segments break at non-finite samples (flagged points)
        std::string path;
        bool open = false;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i])) {
                open = false;
                continue;
            }
            const double px = x0 + xr.clamp01(s.x[i]) * (x1 - x0);
            const double py = y1 - yr.clamp01(s.y[i]) * (y1 - y0);
            path += (open ? " L " : " M ");
            path += fmt(px) + " " + fmt(py);
            open = true;
        }
        if (!path.empty()) {
            out << "<path d=\"" << path.substr(1) << "\" fill=\"none\" stroke=\"" << s.color
                << "\" stroke-width=\"1.5\"/>\n";
        }
    }

    int legend_y = y0 + 16;
    for (const SvgSeries& s : plot.series) {
        out << "<line x1=\"" << x1 - 170 << "\" y1=\"" << legend_y - 4 << "\" x2=\""
            << x1 - 145 << "\" y2=\"" << legend_y - 4 << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << x1 - 140 << "\" y=\"" << legend_y
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label)
            << "</text>\n";
        legend_y += 18;
    }

    out << "</svg>\n";
    return out.str();
}

std::string render_heatmap(const SvgHeatmap& map,
                           const std::vector<std::string>& config_echo) {
    double v_lo = std::numeric_limits<double>::infinity(), v_hi = -v_lo;
    for (const auto& row : map.field) {
        for (const auto& v : row) {
            if (!v) continue;
            v_lo = std::min(v_lo, *v);
            v_hi = std::max(v_hi, *v);
        }
    }
    if (!std::isfinite(v_lo)) { v_lo = 0.0; v_hi = 1.0; }
    if (v_hi == v_lo) v_hi = v_lo + 1.0;

    const std::size_t nx = map.x_values.size();
    const std::size_t ny = map.y_values.size();
    const int x0 = kMarginLeft, y0 = kMarginTop;
    const int x1 = kWidth - kMarginRight - kColorbarWidth - 60;
    const int y1 = kHeight - kMarginBottom;
    const Range xr{map.x_values.front(), map.x_values.back()};
    const Range yr{map.y_values.front(), map.y_values.back()};
    const Range vr{v_lo, v_hi};

    std::ostringstream out;
    open_svg(out, config_echo);

    const double cell_w = static_cast<double>(x1 - x0) / nx;
    const double cell_h = static_cast<double>(y1 - y0) / ny;
    for (std::size_t i = 0; i < ny; ++i) {
        for (std::size_t j = 0; j < nx; ++j) {
            const std::optional<double>& v = map.field[i][j];
            const std::string color = v ? viridis(vr.clamp01(*v)) : "#c8c8c8";
            const double px = x0 + cell_w * j;
            const double py = y1 - cell_h * (i + 1);
            out << "<rect x=\"" << fmt(px) << "\" y=\"" << fmt(py) << "\" width=\""
                << fmt(cell_w + 0.5) << "\" height=\"" << fmt(cell_h + 0.5) << "\" fill=\""
                << color << "\"/>\n";
        }
    }
    draw_frame(out, map.title, map.x_label, map.y_label, xr, yr, x1);

    // colorbar
    const int cb_x = x1 + 24;
    const int cb_steps = 64;
    const double cb_h = static_cast<double>(y1 - y0) / cb_steps;
    for (int s = 0; s < cb_steps; ++s) {
        out << "<rect x=\"" << cb_x << "\" y=\"" << fmt(y1 - cb_h * (s + 1)) << "\" width=\""
            << kColorbarWidth << "\" height=\"" << fmt(cb_h + 0.5) << "\" fill=\""
            << viridis((s + 0.5) / cb_steps) << "\"/>\n";
    }
    out << "<rect x=\"" << cb_x << "\" y=\"" << y0 << "\" width=\"" << kColorbarWidth
        << "\" height=\"" << y1 - y0 << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : ticks(vr, 5)) {
        const double py = y1 - vr.clamp01(t) * (y1 - y0);
        out << "<text x=\"" << cb_x + kColorbarWidth + 4 << "\" y=\"" << fmt(py + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << fmt_tick(t) << "</text>\n";
    }
    out << "<text x=\"" << cb_x + kColorbarWidth / 2 << "\" y=\"" << y0 - 8
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape(map.value_label) << "</text>\n";

    out << "</svg>\n";
    return out.str();
}

} // namespace twpa
