#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mp3/params.hpp"

// Deterministic text output: CSV tables, minimal standalone SVG 1.1
// plots, and a file/stdout sink.  Byte-for-byte identical output for
// identical inputs is part of the contract (no timestamps, no locale).
namespace mp3::io {

struct OutputSpec {
    std::string format = "csv";  // csv | json | svg
    std::string path = "-";      // "-" = stdout
    int precision = 12;          // significant digits, 6..17

    void validate() const;
};

// %.{precision}g formatting; precision 17 round-trips doubles.
std::string format_double(double v, int precision);

void write_text(const std::string& path, const std::string& content);

struct Series {
    std::string name;
    std::vector<double> values;
};

using Annotations = std::vector<std::pair<std::string, std::string>>;

// Comment lines ("# key=value"), then a header row, then data rows,
// LF endings throughout.
std::string csv_table(const std::vector<Series>& columns,
                      const Annotations& notes, int precision);

// Polyline plot of one or more named series over a shared x column.
std::string svg_line_plot(const std::string& title, const std::string& xlabel,
                          const std::string& ylabel,
                          const std::vector<double>& xs,
                          const std::vector<Series>& curves, int precision);

// Histogram bars (already normalized to density) with an overlay curve.
std::string svg_histogram(const std::string& title,
                          const std::vector<double>& edges,
                          const std::vector<double>& bar_density,
                          const std::vector<double>& overlay_x,
                          const std::vector<double>& overlay_y, int precision);

}  // namespace mp3::io
