#ifndef NECROSIM_SVG_HPP
#define NECROSIM_SVG_HPP

#include <string>
#include <vector>

namespace necrosim {

struct SvgSeries {
    std::string name;
    std::vector<double> x, y;
};

/// Standalone SVG line chart: axes, ticks, legend, one polyline per series.
void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<SvgSeries>& series);

}  // namespace necrosim

#endif
