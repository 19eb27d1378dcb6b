// output.hpp: CSV formatting and parsing, SVG plots

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperent::cli {

/// Shortest round-trip representation, '.' decimal separator, any locale.
std::string format_double(double value);

/// Parses a full field as a double; throws std::invalid_argument otherwise.
double parse_double(const std::string& text);

/// RFC 4180 quoting when the field contains a comma, quote or line break.
std::string csv_field(const std::string& text);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index by header name; throws std::out_of_range if missing.
    std::size_t column(const std::string& name) const;
};

void write_csv(std::ostream& out, const CsvTable& table);
CsvTable read_csv(std::istream& in);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool markers{false};  // scatter points instead of a polyline
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    int width{720};
    int height{440};
};

/// Self-contained SVG with axes, ticks and a legend. Non-finite points are skipped.
std::string render_svg(const PlotSpec& plot);

/// Writes `text` to `path`; throws std::runtime_error when the file cannot be written.
void write_file(const std::string& path, const std::string& text);

}  // namespace hyperent::cli
