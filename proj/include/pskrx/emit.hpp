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

#ifndef PSKRX_EMIT_HPP
#define PSKRX_EMIT_HPP

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pskrx/sweep.hpp"

namespace pskrx {

enum class OutputFormat { Csv, Json, Svg };

OutputFormat parse_output_format(std::string_view text);
std::string_view extension(OutputFormat format);

/// Shortest decimal that round-trips, capped at 9 significant digits.
std::string format_number(double value);

inline constexpr std::string_view kCsvHeader = "curve_label,mean_photon,p_err,ci_low,ci_high,helstrom,sql";

void write_csv(std::span<const CurvePoint> points, std::ostream& out);
void write_json(std::span<const CurvePoint> points, std::ostream& out);

/// Log-scale error-probability chart: one solid Helstrom path, one dashed
/// SQL path and a marker series per curve label.
void write_svg(std::span<const CurvePoint> points, std::ostream& out, std::string_view title = {});

/// Writes to `path`. Throws IoError naming the path on failure.
void emit(std::span<const CurvePoint> points, OutputFormat format, const std::filesystem::path& path);

/// Parses a table written by write_csv. Throws ConfigError on malformed input.
std::vector<CurvePoint> parse_csv(std::istream& in);

}  // namespace pskrx

#endif  // PSKRX_EMIT_HPP
