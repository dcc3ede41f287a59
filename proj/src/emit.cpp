// Copyright 2026 The pskrx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pskrx/emit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "json.hpp"
#include "pskrx/errors.hpp"

namespace pskrx {

namespace {

double rounded(double value) {
    const std::string text = format_number(value);
    double back = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), back);
    return back;
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n\r") == std::string::npos) {
        return text;
    }
    std::string quoted = "\"";
    for (char ch : text) {
        if (ch == '"') {
            quoted += '"';
        }
        quoted += ch;
    }
    return quoted + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        const char ch = line[k];
        if (quoted) {
            if (ch == '"' && k + 1 < line.size() && line[k + 1] == '"') {
                fields.back() += '"';
                ++k;
            } else if (ch == '"') {
                quoted = false;
            } else {
                fields.back() += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.emplace_back();
        } else {
            fields.back() += ch;
        }
    }
    return fields;
}

std::string xml_escape(std::string_view text) {
    std::string out;
    for (char ch : text) {
        switch (ch) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += ch;
        }
    }
    return out;
}

// Coordinates in the SVG are written with two decimals; enough for a
// 640 x 480 canvas and stable across platforms.
std::string px(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
    return std::string(buf, ptr);
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};
constexpr const char* kMarkers[] = {"circle", "square", "triangle", "diamond"};

}  // namespace

OutputFormat parse_output_format(std::string_view text) {
    if (text == "csv") {
        return OutputFormat::Csv;
    }
    if (text == "json") {
        return OutputFormat::Json;
    }
    if (text == "svg") {
        return OutputFormat::Svg;
    }
    throw ConfigError("unknown output format '" + std::string(text) + "' (expected csv, json or svg)");
}

std::string_view extension(OutputFormat format) {
    switch (format) {
        case OutputFormat::Csv:
            return "csv";
        case OutputFormat::Json:
            return "json";
        case OutputFormat::Svg:
            return "svg";
    }
    return "";
}

std::string format_number(double value) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    std::string_view shortest(buf, static_cast<std::size_t>(end - buf));
    int digits = 0;
    bool leading = true;
    for (char ch : shortest.substr(0, shortest.find('e'))) {
        if (ch >= '1' && ch <= '9') {
            leading = false;
        }
        digits += (ch >= '0' && ch <= '9' && !leading) ? 1 : 0;
    }
    if (digits <= 9) {
        return std::string(shortest);
    }
    const auto [ptr, ec9] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 9);
    return std::string(buf, ptr);
}

void write_csv(std::span<const CurvePoint> points, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& p : points) {
        out << csv_field(p.curve_label) << ',' << format_number(p.mean_photon) << ',' << format_number(p.p_err) << ','
            << format_number(p.ci_low) << ',' << format_number(p.ci_high) << ',' << format_number(p.helstrom) << ','
            << format_number(p.sql) << '\n';
    }
}

void write_json(std::span<const CurvePoint> points, std::ostream& out) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& p : points) {
        nlohmann::ordered_json row;
        row["curve_label"] = p.curve_label;
        row["mean_photon"] = rounded(p.mean_photon);
        row["p_err"] = rounded(p.p_err);
        row["ci_low"] = rounded(p.ci_low);
        row["ci_high"] = rounded(p.ci_high);
        row["helstrom"] = rounded(p.helstrom);
        row["sql"] = rounded(p.sql);
        rows.push_back(std::move(row));
    }
    out << rows.dump(2) << '\n';
}

void write_svg(std::span<const CurvePoint> points, std::ostream& out, std::string_view title) {
    constexpr double kWidth = 640, kHeight = 480;
    constexpr double kLeft = 80, kRight = 170, kTop = 40, kBottom = 60;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;

    // Curves in first-appearance order; reference lines from the distinct
    // photon numbers.
    std::vector<std::string> labels;
    std::map<double, std::pair<double, double>> reference;
    double x_min = 0.0, x_max = 1.0, y_min_seen = 1.0;
    bool any = false;
    for (const auto& p : points) {
        if (std::find(labels.begin(), labels.end(), p.curve_label) == labels.end()) {
            labels.push_back(p.curve_label);
        }
        reference[p.mean_photon] = {p.helstrom, p.sql};
        x_min = any ? std::min(x_min, p.mean_photon) : p.mean_photon;
        x_max = any ? std::max(x_max, p.mean_photon) : p.mean_photon;
        any = true;
        for (double y : {p.p_err, p.helstrom, p.sql}) {
            if (y > 0.0) {
                y_min_seen = std::min(y_min_seen, y);
            }
        }
    }
    if (!(x_max > x_min)) {
        x_max = x_min + 1.0;
    }
    const int decade_lo = std::max(-12, static_cast<int>(std::floor(std::log10(y_min_seen))));
    const int decade_hi = 0;
    const int decades = std::max(1, decade_hi - decade_lo);
    const double y_floor = std::pow(10.0, decade_hi - decades);

    auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    auto sy = [&](double y) {
        const double ly = std::log10(std::max(y, y_floor));
        return kTop + (decade_hi - ly) / decades * plot_h;
    };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    if (!title.empty()) {
        out << "<text x=\"" << px(kLeft + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
            << xml_escape(title) << "</text>\n";
    }

    out << "<g class=\"axes\" stroke=\"#444\" stroke-width=\"1\">\n";
    out << "<rect x=\"" << px(kLeft) << "\" y=\"" << px(kTop) << "\" width=\"" << px(plot_w) << "\" height=\""
        << px(plot_h) << "\" fill=\"none\"/>\n";
    for (int d = decade_hi - decades; d <= decade_hi; ++d) {
        const double y = kTop + static_cast<double>(decade_hi - d) / decades * plot_h;
        out << "<line x1=\"" << px(kLeft - 5) << "\" y1=\"" << px(y) << "\" x2=\"" << px(kLeft) << "\" y2=\"" << px(y)
            << "\"/>\n";
        out << "<text x=\"" << px(kLeft - 8) << "\" y=\"" << px(y + 4)
            << "\" text-anchor=\"end\" stroke=\"none\" fill=\"#000\">1e" << d << "</text>\n";
    }
    for (int k = 0; k <= 5; ++k) {
        const double xv = x_min + (x_max - x_min) * k / 5.0;
        const double x = sx(xv);
        out << "<line x1=\"" << px(x) << "\" y1=\"" << px(kTop + plot_h) << "\" x2=\"" << px(x) << "\" y2=\""
            << px(kTop + plot_h + 5) << "\"/>\n";
        out << "<text x=\"" << px(x) << "\" y=\"" << px(kTop + plot_h + 20)
            << "\" text-anchor=\"middle\" stroke=\"none\" fill=\"#000\">" << format_number(rounded(xv)) << "</text>\n";
    }
    out << "</g>\n";
    out << "<text x=\"" << px(kLeft + plot_w / 2) << "\" y=\"" << px(kHeight - 18)
        << "\" text-anchor=\"middle\">mean photon number |alpha|^2</text>\n";
    out << "<text x=\"20\" y=\"" << px(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << px(kTop + plot_h / 2) << ")\">error probability</text>\n";

    auto reference_path = [&](bool sql) {
        std::string d;
        for (const auto& [x, ys] : reference) {
            d += (d.empty() ? "M" : " L") + px(sx(x)) + ' ' + px(sy(sql ? ys.second : ys.first));
        }
        return d;
    };
    if (!reference.empty()) {
        out << "<path class=\"reference helstrom\" d=\"" << reference_path(false)
            << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
        out << "<path class=\"reference sql\" d=\"" << reference_path(true)
            << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
    }

    for (std::size_t c = 0; c < labels.size(); ++c) {
        const char* color = kPalette[c % std::size(kPalette)];
        const std::string_view marker = kMarkers[c % std::size(kMarkers)];
        out << "<g class=\"series\" data-label=\"" << xml_escape(labels[c]) << "\" fill=\"" << color
            << "\" stroke=\"" << color << "\">\n";
        for (const auto& p : points) {
            if (p.curve_label != labels[c] || !(p.p_err > 0.0)) {
                continue;
            }
            const double x = sx(p.mean_photon), y = sy(p.p_err);
            if (marker == "circle") {
                out << "<circle cx=\"" << px(x) << "\" cy=\"" << px(y) << "\" r=\"3.5\"/>\n";
            } else if (marker == "square") {
                out << "<rect x=\"" << px(x - 3.5) << "\" y=\"" << px(y - 3.5) << "\" width=\"7\" height=\"7\"/>\n";
            } else if (marker == "triangle") {
                out << "<polygon points=\"" << px(x) << ',' << px(y - 4) << ' ' << px(x - 4) << ',' << px(y + 3.5)
                    << ' ' << px(x + 4) << ',' << px(y + 3.5) << "\"/>\n";
            } else {
                out << "<polygon points=\"" << px(x) << ',' << px(y - 4.5) << ' ' << px(x - 4.5) << ',' << px(y)
                    << ' ' << px(x) << ',' << px(y + 4.5) << ' ' << px(x + 4.5) << ',' << px(y) << "\"/>\n";
            }
        }
        out << "</g>\n";
    }

    // Legend uses <line> elements so the only <path>s are the two bounds.
    double ly = kTop + 10;
    const double lx = kLeft + plot_w + 15;
    out << "<g class=\"legend\">\n";
    out << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly) << "\" x2=\"" << px(lx + 24) << "\" y2=\"" << px(ly)
        << "\" stroke=\"black\" stroke-width=\"1.5\"/><text x=\"" << px(lx + 30) << "\" y=\"" << px(ly + 4)
        << "\">Helstrom</text>\n";
    ly += 18;
    out << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly) << "\" x2=\"" << px(lx + 24) << "\" y2=\"" << px(ly)
        << "\" stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/><text x=\"" << px(lx + 30)
        << "\" y=\"" << px(ly + 4) << "\">SQL</text>\n";
    for (std::size_t c = 0; c < labels.size(); ++c) {
        ly += 18;
        const char* color = kPalette[c % std::size(kPalette)];
        out << "<circle cx=\"" << px(lx + 12) << "\" cy=\"" << px(ly) << "\" r=\"3.5\" fill=\"" << color
            << "\"/><text x=\"" << px(lx + 30) << "\" y=\"" << px(ly + 4) << "\">" << xml_escape(labels[c])
            << "</text>\n";
    }
    out << "</g>\n</svg>\n";
}

void emit(std::span<const CurvePoint> points, OutputFormat format, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(path.string(), "cannot open for writing");
    }
    switch (format) {
        case OutputFormat::Csv:
            write_csv(points, out);
            break;
        case OutputFormat::Json:
            write_json(points, out);
            break;
        case OutputFormat::Svg:
            write_svg(points, out);
            break;
    }
    out.flush();
    if (!out) {
        throw IoError(path.string(), "write failed");
    }
}

std::vector<CurvePoint> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw ConfigError("CSV header does not match '" + std::string(kCsvHeader) + "'");
    }
    std::vector<CurvePoint> points;
    auto number = [](const std::string& field) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc() || ptr != field.data() + field.size()) {
            throw ConfigError("malformed CSV number '" + field + "'");
        }
        return v;
    };
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != 7) {
            throw ConfigError("CSV row has " + std::to_string(f.size()) + " fields, expected 7");
        }
        points.push_back({f[0], number(f[1]), number(f[2]), number(f[3]), number(f[4]), number(f[5]), number(f[6])});
    }
    return points;
}

}  // namespace pskrx
