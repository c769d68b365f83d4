#include "mp3/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace mp3::io {
namespace {

// Plot geometry shared by both SVG flavors.
constexpr int kW = 800, kH = 500;
constexpr int kMarginL = 70, kMarginR = 20, kMarginT = 40, kMarginB = 50;

struct Axis {
    double lo, hi;
    double to_px(double v, int px_lo, int px_hi) const {
        double f = (hi > lo) ? (v - lo) / (hi - lo) : 0.5;
        return px_lo + f * (px_hi - px_lo);
    }
};

std::string xml_escape(const std::string& s) {
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

void svg_open(std::ostringstream& os, const std::string& title) {
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
       << "width=\"" << kW << "\" height=\"" << kH << "\" viewBox=\"0 0 "
       << kW << " " << kH << "\">\n"
       << "<title>" << xml_escape(title) << "</title>\n"
       << "<rect width=\"" << kW << "\" height=\"" << kH
       << "\" fill=\"white\"/>\n";
}

void svg_axes(std::ostringstream& os, const Axis& ax, const Axis& ay,
              const std::string& xlabel, const std::string& ylabel,
              const std::string& title, int precision) {
    int x0 = kMarginL, x1 = kW - kMarginR;
    int y0 = kH - kMarginB, y1 = kMarginT;
    os << "<g stroke=\"black\" fill=\"none\">\n"
       << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1
       << "\" y2=\"" << y0 << "\"/>\n"
       << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0
       << "\" y2=\"" << y1 << "\"/>\n</g>\n";
    os << "<g font-family=\"sans-serif\" font-size=\"13\" fill=\"black\">\n";
    os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kMarginT - 16
       << "\" text-anchor=\"middle\">" << xml_escape(title) << "</text>\n";
    os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kH - 12
       << "\" text-anchor=\"middle\">" << xml_escape(xlabel) << "</text>\n";
    os << "<text x=\"16\" y=\"" << (y0 + y1) / 2
       << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << (y0 + y1) / 2 << ")\">" << xml_escape(ylabel) << "</text>\n";
    int tick_prec = std::min(precision, 6);
    os << "<text x=\"" << x0 << "\" y=\"" << y0 + 18 << "\">"
       << format_double(ax.lo, tick_prec) << "</text>\n";
    os << "<text x=\"" << x1 << "\" y=\"" << y0 + 18
       << "\" text-anchor=\"end\">" << format_double(ax.hi, tick_prec)
       << "</text>\n";
    os << "<text x=\"" << x0 - 6 << "\" y=\"" << y0
       << "\" text-anchor=\"end\">" << format_double(ay.lo, tick_prec)
       << "</text>\n";
    os << "<text x=\"" << x0 - 6 << "\" y=\"" << y1 + 4
       << "\" text-anchor=\"end\">" << format_double(ay.hi, tick_prec)
       << "</text>\n";
    os << "</g>\n";
}

const char* kStrokes[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

}  // namespace

void OutputSpec::validate() const {
    if (format != "csv" && format != "json" && format != "svg")
        throw DomainError("OutputSpec: format must be csv, json or svg");
    if (precision < 6 || precision > 17)
        throw DomainError("OutputSpec: precision must lie in [6, 17]");
}

std::string format_double(double v, int precision) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

void write_text(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("write_text: cannot open " + path);
    f << content;
    if (!f) throw Error("write_text: short write to " + path);
}

std::string csv_table(const std::vector<Series>& columns,
                      const Annotations& notes, int precision) {
    std::ostringstream os;
    for (const auto& [k, v] : notes) os << "# " << k << "=" << v << "\n";
    for (std::size_t c = 0; c < columns.size(); ++c)
        os << columns[c].name << (c + 1 < columns.size() ? "," : "\n");
    std::size_t rows = columns.empty() ? 0 : columns[0].values.size();
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            os << format_double(columns[c].values[i], precision)
               << (c + 1 < columns.size() ? "," : "\n");
        }
    }
    return os.str();
}

std::string svg_line_plot(const std::string& title, const std::string& xlabel,
                          const std::string& ylabel,
                          const std::vector<double>& xs,
                          const std::vector<Series>& curves, int precision) {
    Axis ax{xs.empty() ? 0.0 : xs.front(), xs.empty() ? 1.0 : xs.back()};
    double ylo = 0.0, yhi = 0.0;
    for (const auto& c : curves)
        for (double v : c.values) {
            ylo = std::min(ylo, v);
            yhi = std::max(yhi, v);
        }
    if (!(yhi > ylo)) yhi = ylo + 1.0;
    Axis ay{ylo, yhi};

    std::ostringstream os;
    svg_open(os, title);
    svg_axes(os, ax, ay, xlabel, ylabel, title, precision);
    int x0 = kMarginL, x1 = kW - kMarginR;
    int y0 = kH - kMarginB, y1 = kMarginT;
    for (std::size_t c = 0; c < curves.size(); ++c) {
        os << "<polyline fill=\"none\" stroke=\""
           << kStrokes[c % 4] << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            os << format_double(ax.to_px(xs[i], x0, x1), 8) << ","
               << format_double(ay.to_px(curves[c].values[i], y0, y1), 8);
            if (i + 1 < xs.size()) os << " ";
        }
        os << "\"/>\n";
    }
    // Raw values, spot-checkable against the CSV twin.
    os << "<desc>\n";
    std::vector<Series> cols;
    cols.push_back({xlabel, xs});
    for (const auto& c : curves) cols.push_back(c);
    os << csv_table(cols, {}, precision);
    os << "</desc>\n</svg>\n";
    return os.str();
}

std::string svg_histogram(const std::string& title,
                          const std::vector<double>& edges,
                          const std::vector<double>& bar_density,
                          const std::vector<double>& overlay_x,
                          const std::vector<double>& overlay_y, int precision) {
    Axis ax{edges.front(), edges.back()};
    double yhi = 0.0;
    for (double v : bar_density) yhi = std::max(yhi, v);
    for (double v : overlay_y) yhi = std::max(yhi, v);
    if (!(yhi > 0.0)) yhi = 1.0;
    Axis ay{0.0, yhi * 1.05};

    std::ostringstream os;
    svg_open(os, title);
    svg_axes(os, ax, ay, "eigenvalue", "density", title, precision);
    int x0 = kMarginL, x1 = kW - kMarginR;
    int y0 = kH - kMarginB, y1 = kMarginT;
    os << "<g fill=\"#9ecae1\" stroke=\"#4292c6\" stroke-width=\"0.5\">\n";
    for (std::size_t b = 0; b < bar_density.size(); ++b) {
        double px0 = ax.to_px(edges[b], x0, x1);
        double px1 = ax.to_px(edges[b + 1], x0, x1);
        double py = ay.to_px(bar_density[b], y0, y1);
        os << "<rect x=\"" << format_double(px0, 8) << "\" y=\""
           << format_double(py, 8) << "\" width=\""
           << format_double(px1 - px0, 8) << "\" height=\""
           << format_double(double(y0) - py, 8) << "\"/>\n";
    }
    os << "</g>\n";
    os << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < overlay_x.size(); ++i) {
        os << format_double(ax.to_px(overlay_x[i], x0, x1), 8) << ","
           << format_double(ay.to_px(std::min(overlay_y[i], ay.hi), y0, y1), 8);
        if (i + 1 < overlay_x.size()) os << " ";
    }
    os << "\"/>\n";
    os << "<desc>\n";
    std::vector<Series> cols;
    cols.push_back({"bin_left", std::vector<double>(edges.begin(), edges.end() - 1)});
    cols.push_back({"bar_density", bar_density});
    os << csv_table(cols, {}, precision);
    os << "</desc>\n</svg>\n";
    return os.str();
}

}  // namespace mp3::io
