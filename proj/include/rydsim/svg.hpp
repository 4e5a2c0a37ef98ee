#pragma once

#include <string>
#include <vector>

namespace rydsim::svg {

// Minimal self-contained SVG writers (polylines + axes + grayscale cells);
// no external renderer.

struct Series {
    std::vector<double> x, y;
    std::string color = "#1f6fb5";
};

std::string line_plot(const std::vector<Series>& series, const std::string& x_label,
                      const std::string& y_label, const std::string& title);

// column-major grid: values[ix][iy]
std::string heatmap(const std::vector<double>& x, const std::vector<double>& y,
                    const std::vector<std::vector<double>>& values,
                    const std::string& x_label, const std::string& y_label,
                    const std::string& title);

}  // namespace rydsim::svg
