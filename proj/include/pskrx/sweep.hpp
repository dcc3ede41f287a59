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

#ifndef PSKRX_SWEEP_HPP
#define PSKRX_SWEEP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pskrx/receiver_sim.hpp"

namespace pskrx {

/// A parameter overlaid as separate curves, e.g. eta over {1, 0.8}.
struct VaryAxis {
    std::string name;  // eta, nu, tau, xi or detector
    std::vector<std::string> values;
};

struct SweepSpec {
    ReceiverConfig base;
    std::vector<double> photon_grid;
    std::optional<VaryAxis> vary;
    std::uint64_t trials = 1'000'000;
    std::uint64_t master_seed = 1;
    unsigned threads = 0;
    /// Use exact enumeration for cells where it is feasible.
    bool exact = false;
};

/// One row of a result table.
struct CurvePoint {
    std::string curve_label;
    double mean_photon = 0.0;
    double p_err = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double helstrom = 0.0;
    double sql = 0.0;

    bool operator==(const CurvePoint&) const = default;
};

enum class GridScale { Geometric, Linear };

/// `steps` points from `lo` to `hi` inclusive. Geometric grids need lo > 0.
std::vector<double> make_photon_grid(double lo, double hi, int steps, GridScale scale);

/// 20 geometric points over [0.05, 50]. The upper end reaches past the
/// error minimum of mode-mismatched on-off receivers (|alpha|^2 ~ 16 for
/// QPSK, ~ 22 for 8-PSK at xi = 0.995).
std::vector<double> default_photon_grid();

/// Sets one named device or detector parameter from text. Throws
/// ConfigError for unknown names or unparsable values.
void apply_parameter(ReceiverConfig& cfg, std::string_view name, std::string_view value);

/// Base configuration and detector overlay of the named experimental
/// presets "fig2e" (QPSK) and "fig3e" (8-PSK): N = 10, eta = 0.723,
/// nu = 2.7e-5, tau = 0.99, xi = 0.995, on-off and PNRD curves.
SweepSpec preset(std::string_view name);

/// Checks every cell's configuration. Throws ConfigError.
void validate_sweep(const SweepSpec& spec);

/// Runs every (curve, mean photon) cell and attaches both reference bounds.
/// Rows are sorted by (curve_label, mean_photon). Each cell's seed is
/// derived from master_seed and the cell position.
std::vector<CurvePoint> run_sweep(const SweepSpec& spec);

}  // namespace pskrx

#endif  // PSKRX_SWEEP_HPP
