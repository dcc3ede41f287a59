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

#include <cmath>
#include <filesystem>
#include <random>
#include <regex>
#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"
#include "pskrx/errors.hpp"

using namespace pskrx;

namespace {

CurvePoint sample_row() { return {"onoff", 0.5, 0.1, 0.09, 0.11, 0.01, 0.2}; }

std::size_t count_of(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

}  // namespace

TEST(emit, format_number_cases) {
    EXPECT_EQ(format_number(0.0), "0");
    EXPECT_EQ(format_number(30.0), "30");
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(0.5), "0.5");
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333");
    EXPECT_EQ(format_number(2.0 / 3.0), "0.666666667");
    EXPECT_EQ(format_number(2.7e-5), "2.7e-05");
    EXPECT_EQ(format_number(0.723), "0.723");
}

TEST(emit, csv_golden) {
    const std::vector<CurvePoint> rows{sample_row()};
    std::ostringstream os;
    write_csv(rows, os);
    EXPECT_EQ(os.str(),
              "curve_label,mean_photon,p_err,ci_low,ci_high,helstrom,sql\n"
              "onoff,0.5,0.1,0.09,0.11,0.01,0.2\n");

    std::ostringstream empty;
    write_csv({}, empty);
    EXPECT_EQ(empty.str(), "curve_label,mean_photon,p_err,ci_low,ci_high,helstrom,sql\n");
}

TEST(emit, csv_round_trip) {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> exponent(-15.0, 2.0);
    std::vector<CurvePoint> rows;
    for (int k = 0; k < 200; ++k) {
        auto v = [&] { return std::pow(10.0, exponent(gen)); };
        rows.push_back({k % 3 ? "eta=0.8" : "x,\"quoted\"", v(), v(), v(), v(), v(), v()});
    }
    std::ostringstream os;
    write_csv(rows, os);
    std::istringstream is(os.str());
    const auto back = parse_csv(is);
    ASSERT_EQ(back.size(), rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        EXPECT_EQ(back[k].curve_label, rows[k].curve_label);
        for (auto field : {&CurvePoint::mean_photon, &CurvePoint::p_err, &CurvePoint::ci_low, &CurvePoint::ci_high,
                           &CurvePoint::helstrom, &CurvePoint::sql}) {
            EXPECT_NEAR(back[k].*field, rows[k].*field, 5e-9 * rows[k].*field);
        }
    }
    // Writing what was read reproduces the bytes.
    std::ostringstream again;
    write_csv(back, again);
    EXPECT_EQ(again.str(), os.str());
}

TEST(emit, csv_parse_rejects_garbage) {
    std::istringstream bad_header("a,b,c\n");
    EXPECT_THROW(parse_csv(bad_header), ConfigError);
    std::istringstream short_row(std::string(kCsvHeader) + "\nonoff,1,2\n");
    EXPECT_THROW(parse_csv(short_row), ConfigError);
}

TEST(emit, json_keys_and_values) {
    const std::vector<CurvePoint> rows{sample_row(), {"pnrd", 1.0, 1.0 / 3.0, 0.3, 0.4, 0.0, 0.5}};
    std::ostringstream os;
    write_json(rows, os);
    const auto doc = nlohmann::json::parse(os.str());
    ASSERT_TRUE(doc.is_array());
    ASSERT_EQ(doc.size(), 2u);
    const std::vector<std::string> keys{"curve_label", "mean_photon", "p_err", "ci_low", "ci_high", "helstrom", "sql"};
    for (const auto& row : doc) {
        ASSERT_EQ(row.size(), keys.size());
        for (const auto& k : keys) {
            EXPECT_TRUE(row.contains(k)) << k;
        }
    }
    EXPECT_EQ(doc[0]["curve_label"], "onoff");
    EXPECT_EQ(doc[1]["p_err"].get<double>(), 0.333333333);
    // Key order follows the CSV columns.
    EXPECT_LT(os.str().find("\"curve_label\""), os.str().find("\"mean_photon\""));
    EXPECT_LT(os.str().find("\"helstrom\""), os.str().find("\"sql\""));
}

TEST(emit, svg_structure) {
    std::vector<CurvePoint> rows;
    for (const char* label : {"onoff", "pnrd"}) {
        for (double x : {0.1, 1.0, 10.0}) {
            rows.push_back({label, x, 0.1 / x, 0.05 / x, 0.2 / x, 0.01 / x, 0.2 / x});
        }
    }
    std::ostringstream os;
    write_svg(rows, os, "QPSK");
    const std::string svg = os.str();
    EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    EXPECT_EQ(count_of(svg, "<path"), 2u);
    const std::regex dashed_path("<path[^>]*stroke-dasharray");
    EXPECT_EQ(std::distance(std::sregex_iterator(svg.begin(), svg.end(), dashed_path), std::sregex_iterator()), 1);
    EXPECT_EQ(count_of(svg, "class=\"series\""), 2u);
    EXPECT_NE(svg.find("data-label=\"onoff\""), std::string::npos);
    EXPECT_NE(svg.find("data-label=\"pnrd\""), std::string::npos);
    const std::regex dashed("<path[^>]*class=\"reference sql\"[^>]*stroke-dasharray");
    EXPECT_TRUE(std::regex_search(svg, dashed));
}

TEST(emit, format_names) {
    EXPECT_EQ(parse_output_format("csv"), OutputFormat::Csv);
    EXPECT_EQ(parse_output_format("svg"), OutputFormat::Svg);
    EXPECT_EQ(extension(OutputFormat::Json), "json");
    EXPECT_THROW(parse_output_format("png"), ConfigError);
}

TEST(emit, unwritable_path) {
    const std::vector<CurvePoint> rows{sample_row()};
    const auto path = std::filesystem::temp_directory_path() / "pskrx_no_such_dir" / "x" / "out.csv";
    EXPECT_THROW(emit(rows, OutputFormat::Csv, path), IoError);

    const auto ok = std::filesystem::temp_directory_path() / "pskrx_emit_test.csv";
    emit(rows, OutputFormat::Csv, ok);
    EXPECT_TRUE(std::filesystem::exists(ok));
    std::filesystem::remove(ok);
}
