#include "rydsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace rydsim::svg {

namespace {

constexpr int width = 640, height = 420;
constexpr int margin_left = 64, margin_right = 16, margin_top = 32, margin_bottom = 48;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Range {
    double lo = 0.0, hi = 1.0;
    double map(double v, double pix_lo, double pix_hi) const {
        const double t = (v - lo) / (hi - lo);
        return pix_lo + t * (pix_hi - pix_lo);
    }
};

Range span(const std::vector<double>& v) {
    Range r{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
    for (double x : v) {
        r.lo = std::min(r.lo, x);
        r.hi = std::max(r.hi, x);
    }
    if (!(r.hi > r.lo)) {
        r.lo -= 0.5;
        r.hi += 0.5;
    }
    return r;
}

void axes(std::ostringstream& os, const Range& rx, const Range& ry, const std::string& x_label,
          const std::string& y_label, const std::string& title) {
    os << "<rect x='" << margin_left << "' y='" << margin_top << "' width='"
       << (width - margin_left - margin_right) << "' height='"
       << (height - margin_top - margin_bottom)
       << "' fill='none' stroke='#444' stroke-width='1'/>\n";
    os << "<text x='" << width / 2 << "' y='20' text-anchor='middle' font-size='14'>" << title
       << "</text>\n";
    os << "<text x='" << width / 2 << "' y='" << (height - 10)
       << "' text-anchor='middle' font-size='12'>" << x_label << "</text>\n";
    os << "<text x='16' y='" << height / 2 << "' text-anchor='middle' font-size='12' "
       << "transform='rotate(-90 16 " << height / 2 << ")'>" << y_label << "</text>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = rx.lo + (rx.hi - rx.lo) * i / 4.0;
        const double px = margin_left + (width - margin_left - margin_right) * i / 4.0;
        os << "<text x='" << fmt(px) << "' y='" << (height - margin_bottom + 16)
           << "' text-anchor='middle' font-size='10'>" << fmt(fx) << "</text>\n";
        const double fy = ry.lo + (ry.hi - ry.lo) * i / 4.0;
        const double py = height - margin_bottom - (height - margin_top - margin_bottom) * i / 4.0;
        os << "<text x='" << (margin_left - 6) << "' y='" << fmt(py + 3)
           << "' text-anchor='end' font-size='10'>" << fmt(fy) << "</text>\n";
    }
}

}  // namespace

std::string line_plot(const std::vector<Series>& series, const std::string& x_label,
                      const std::string& y_label, const std::string& title) {
    std::vector<double> all_x, all_y;
    for (const auto& s : series) {
        all_x.insert(all_x.end(), s.x.begin(), s.x.end());
        all_y.insert(all_y.end(), s.y.begin(), s.y.end());
    }
    const Range rx = span(all_x), ry = span(all_y);
    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
       << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    axes(os, rx, ry, x_label, y_label, title);
    for (const auto& s : series) {
        os << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.2' points='";
        for (size_t i = 0; i < s.x.size(); ++i) {
            const double px = rx.map(s.x[i], margin_left, width - margin_right);
            const double py = ry.map(s.y[i], height - margin_bottom, margin_top);
            os << fmt(px) << "," << fmt(py) << " ";
        }
        os << "'/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string heatmap(const std::vector<double>& x, const std::vector<double>& y,
                    const std::vector<std::vector<double>>& values, const std::string& x_label,
                    const std::string& y_label, const std::string& title) {
    const Range rx = span(x), ry = span(y);
    double vmax = 0.0;
    for (const auto& col : values)
        for (double v : col) vmax = std::max(vmax, v);
    if (vmax <= 0.0) vmax = 1.0;

    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
       << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    const double cell_w = (width - margin_left - margin_right) / double(x.size());
    const double cell_h = (height - margin_top - margin_bottom) / double(y.size());
    for (size_t ix = 0; ix < x.size(); ++ix) {
        for (size_t iy = 0; iy < y.size(); ++iy) {
            // sqrt tonemap keeps weak lines visible
            const double t = std::sqrt(values[ix][iy] / vmax);
            const int shade = static_cast<int>(std::lround(255.0 * (1.0 - t)));
            const double px = margin_left + ix * cell_w;
            const double py = height - margin_bottom - (iy + 1) * cell_h;
            os << "<rect x='" << fmt(px) << "' y='" << fmt(py) << "' width='" << fmt(cell_w + 0.5)
               << "' height='" << fmt(cell_h + 0.5) << "' fill='rgb(" << shade << "," << shade
               << "," << shade << ")'/>\n";
        }
    }
    axes(os, rx, ry, x_label, y_label, title);
    os << "</svg>\n";
    return os.str();
}

}  // namespace rydsim::svg
