#include "necrosim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "necrosim/csv.hpp"
#include "necrosim/errors.hpp"

namespace necrosim {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
    double lo = 0.0, hi = 1.0;
    void expand(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
};

double nice_tick(double span) {
    if (!(span > 0.0)) return 1.0;
    double raw = span / 5.0;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double frac = raw / mag;
    double step = frac < 1.5 ? 1.0 : frac < 3.5 ? 2.0 : frac < 7.5 ? 5.0 : 10.0;
    return step * mag;
}

}  // namespace

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<SvgSeries>& series) {
    const double W = 720, H = 480;
    const double ml = 70, mr = 20, mt = 40, mb = 55;
    Range xr, yr;
    bool first = true;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (first) {
                xr.lo = xr.hi = s.x[i];
                yr.lo = yr.hi = s.y[i];
                first = false;
            }
            xr.expand(s.x[i]);
            yr.expand(s.y[i]);
        }
    }
    if (xr.hi <= xr.lo) xr.hi = xr.lo + 1.0;
    if (yr.hi <= yr.lo) yr.hi = yr.lo + 1.0;
    double ypad = 0.05 * (yr.hi - yr.lo);
    yr.lo -= ypad;
    yr.hi += ypad;

    auto px = [&](double x) { return ml + (x - xr.lo) / (xr.hi - xr.lo) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - yr.lo) / (yr.hi - yr.lo) * (H - mt - mb); };

    std::ofstream out(path);
    if (!out) throw ConfigError("svg: cannot open '" + path + "' for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
        << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // Axes.
    out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr
        << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << H - mb << "\" stroke=\"black\"/>\n";
    double tx = nice_tick(xr.hi - xr.lo);
    for (double v = std::ceil(xr.lo / tx) * tx; v <= xr.hi + 1e-12 * tx; v += tx) {
        out << "<line x1=\"" << px(v) << "\" y1=\"" << H - mb << "\" x2=\"" << px(v)
            << "\" y2=\"" << H - mb + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px(v) << "\" y=\"" << H - mb + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_double(v) << "</text>\n";
    }
    double ty = nice_tick(yr.hi - yr.lo);
    for (double v = std::ceil(yr.lo / ty) * ty; v <= yr.hi + 1e-12 * ty; v += ty) {
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(v) << "\" x2=\"" << ml
            << "\" y2=\"" << py(v) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << py(v) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_double(v) << "</text>\n";
    }
    out << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << (mt + H - mb) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 16 " << (mt + H - mb) / 2 << ")\">" << y_label
        << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kPalette[k % (sizeof kPalette / sizeof *kPalette)];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        }
        out << "\"/>\n";
        double lx = W - mr - 150, ly = mt + 18.0 * static_cast<double>(k) + 10;
        out << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 22
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << lx + 28 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.name
            << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace necrosim
