#include "output.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace hyperent::cli {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

double parse_double(const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last || text.empty())
        throw std::invalid_argument("not a number: '" + text + "'");
    return v;
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
    std::string out = "\"";
    for (const char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::size_t CsvTable::column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::out_of_range("CSV has no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

namespace {

void write_row(std::ostream& out, const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        out << csv_field(row[i]);
    }
    out << "\r\n";
}

// One RFC 4180 record; returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    if (in.peek() == std::char_traits<char>::eof()) return false;
    std::string field;
    bool quoted = false;
    char c = 0;
    while (in.get(c)) {
        if (quoted) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field += '"';
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            break;
        } else if (c != '\r') {
            field += c;
        }
    }
    if (quoted) throw std::runtime_error("CSV: unterminated quoted field");
    fields.push_back(std::move(field));
    return true;
}

}  // namespace

void write_csv(std::ostream& out, const CsvTable& table) {
    write_row(out, table.header);
    for (const auto& r : table.rows) write_row(out, r);
}

CsvTable read_csv(std::istream& in) {
    CsvTable t;
    if (!read_record(in, t.header)) throw std::runtime_error("CSV: empty input");
    std::vector<std::string> row;
    while (read_record(in, row)) {
        if (row.size() == 1 && row[0].empty()) continue;
        if (row.size() != t.header.size()) throw std::runtime_error("CSV: row width differs from header");
        t.rows.push_back(row);
    }
    return t;
}

// ---------------------------------------------------------------------------

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s.precision(6);
    s << v;
    return s.str();
}

// 1-2-5 tick step covering [lo, hi] with about `count` ticks.
double tick_step(double lo, double hi, int count) {
    const double raw = (hi - lo) / count;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (const double m : {1.0, 2.0, 5.0})
        if (raw <= m * mag) return m * mag;
    return 10.0 * mag;
}

constexpr std::array<const char*, 6> kColors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

}  // namespace

std::string render_svg(const PlotSpec& plot) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : plot.series)
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 <= x0) x0 -= 0.5, x1 += 0.5;
    if (y1 <= y0) {
        const double pad = y0 == 0.0 ? 1.0 : 0.1 * std::abs(y0);
        y0 -= pad;
        y1 += pad;
    }
    const double ypad = 0.05 * (y1 - y0);
    y1 += ypad;
    if (y0 < 0.0 || y0 - ypad >= 0.0) y0 -= ypad;

    const double left = 80, right = 20, top = 40, bottom = 60;
    const double w = plot.width - left - right;
    const double h = plot.height - top - bottom;
    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * w; };
    auto py = [&](double y) { return top + (y1 - y) / (y1 - y0) * h; };

    std::ostringstream o;
    o.imbue(std::locale::classic());
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot.width << "\" height=\"" << plot.height
      << "\" viewBox=\"0 0 " << plot.width << ' ' << plot.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << plot.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(plot.title)
      << "</text>\n";
    o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << w << "\" height=\"" << h
      << "\" fill=\"none\" stroke=\"black\"/>\n";

    const double xs = tick_step(x0, x1, 6);
    for (double t = std::ceil(x0 / xs) * xs; t <= x1 + 1e-9 * xs; t += xs) {
        const double x = px(t);
        o << "<line x1=\"" << num(x) << "\" y1=\"" << top + h << "\" x2=\"" << num(x) << "\" y2=\"" << top + h + 5
          << "\" stroke=\"black\"/>";
        o << "<text x=\"" << num(x) << "\" y=\"" << top + h + 18 << "\" text-anchor=\"middle\">"
          << num(std::abs(t) < 1e-12 * xs ? 0.0 : t) << "</text>\n";
    }
    const double ys = tick_step(y0, y1, 5);
    for (double t = std::ceil(y0 / ys) * ys; t <= y1 + 1e-9 * ys; t += ys) {
        const double y = py(t);
        o << "<line x1=\"" << left - 5 << "\" y1=\"" << num(y) << "\" x2=\"" << left << "\" y2=\"" << num(y)
          << "\" stroke=\"black\"/>";
        o << "<text x=\"" << left - 8 << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">"
          << num(std::abs(t) < 1e-12 * ys ? 0.0 : t) << "</text>\n";
    }
    o << "<text x=\"" << left + w / 2 << "\" y=\"" << plot.height - 15 << "\" text-anchor=\"middle\">"
      << xml_escape(plot.x_label) << "</text>\n";
    o << "<text transform=\"translate(18," << top + h / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << xml_escape(plot.y_label) << "</text>\n";

    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const auto& s = plot.series[k];
        const char* color = kColors[k % kColors.size()];
        if (s.markers) {
            for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
                o << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\"" << num(py(s.y[i])) << "\" r=\"3.5\" fill=\"" << color
                  << "\"/>\n";
            }
        } else {
            o << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" d=\"";
            bool pen_down = false;
            for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                    pen_down = false;
                    continue;
                }
                o << (pen_down ? " L" : " M") << num(px(s.x[i])) << ' ' << num(py(s.y[i]));
                pen_down = true;
            }
            o << "\"/>\n";
        }
        if (!s.label.empty()) {
            const double ly = top + 16 + 16 * static_cast<double>(k);
            o << "<rect x=\"" << left + w - 150 << "\" y=\"" << ly - 9 << "\" width=\"12\" height=\"3\" fill=\"" << color
              << "\"/><text x=\"" << left + w - 132 << "\" y=\"" << ly - 4 << "\">" << xml_escape(s.label) << "</text>\n";
        }
    }
    o << "</svg>\n";
    return o.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << text;
    f.close();
    if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace hyperent::cli
