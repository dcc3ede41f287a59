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

#include "pskrx/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "pskrx/bounds.hpp"
#include "pskrx/emit.hpp"
#include "pskrx/errors.hpp"
#include "pskrx/montecarlo.hpp"

namespace pskrx {

namespace {

double parse_real(std::string_view name, std::string_view text) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ConfigError("parameter " + std::string(name) + ": cannot parse '" + std::string(text) + "'");
    }
    return value;
}

struct Curve {
    std::string label;
    ReceiverConfig cfg;
};

std::vector<Curve> curves_of(const SweepSpec& spec) {
    if (!spec.vary) {
        return {{std::string(to_string(spec.base.detector)), spec.base}};
    }
    if (spec.vary->values.empty()) {
        throw ConfigError("--vary " + spec.vary->name + " has no values");
    }
    std::vector<Curve> curves;
    for (const auto& value : spec.vary->values) {
        Curve curve{"", spec.base};
        apply_parameter(curve.cfg, spec.vary->name, value);
        const std::string shown = spec.vary->name == "detector"
                                      ? std::string(to_string(curve.cfg.detector))
                                      : format_number(parse_real(spec.vary->name, value));
        curve.label = spec.vary->name + "=" + shown;
        curves.push_back(std::move(curve));
    }
    return curves;
}

ReceiverConfig at_photon(const ReceiverConfig& cfg, double mean_photon) {
    ReceiverConfig out = cfg;
    out.constellation = Constellation::from_mean_photon(cfg.m_ary(), mean_photon, cfg.constellation.phase_offset());
    return out;
}

}  // namespace

std::vector<double> make_photon_grid(double lo, double hi, int steps, GridScale scale) {
    if (steps < 1) {
        throw ConfigError("photon grid needs at least one step");
    }
    if (!(lo >= 0.0) || !(hi >= lo)) {
        throw ConfigError("photon grid needs 0 <= min <= max");
    }
    if (scale == GridScale::Geometric && !(lo > 0.0)) {
        throw ConfigError("geometric photon grid needs min > 0");
    }
    if (steps == 1) {
        return {lo};
    }
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) / (steps - 1);
        grid[static_cast<std::size_t>(k)] =
            scale == GridScale::Linear ? lo + (hi - lo) * t : lo * std::pow(hi / lo, t);
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

std::vector<double> default_photon_grid() { return make_photon_grid(0.05, 50.0, 20, GridScale::Geometric); }

void apply_parameter(ReceiverConfig& cfg, std::string_view name, std::string_view value) {
    if (name == "detector") {
        try {
            cfg.detector = parse_detector_kind(value);
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
        return;
    }
    const double x = parse_real(name, value);
    if (name == "eta") {
        cfg.device.eta = x;
    } else if (name == "nu") {
        cfg.device.nu = x;
    } else if (name == "tau") {
        cfg.device.tau = x;
    } else if (name == "xi") {
        cfg.device.xi = x;
    } else {
        throw ConfigError("unknown parameter '" + std::string(name) + "' (expected eta, nu, tau, xi or detector)");
    }
}

SweepSpec preset(std::string_view name) {
    int m_ary = 0;
    if (name == "fig2e") {
        m_ary = 4;
    } else if (name == "fig3e") {
        m_ary = 8;
    } else {
        throw ConfigError("unknown preset '" + std::string(name) + "' (expected fig2e or fig3e)");
    }
    SweepSpec spec;
    spec.base.constellation = Constellation(m_ary, 1.0);
    spec.base.n_partitions = 10;
    spec.base.device = DeviceParams{0.723, 2.7e-5, 0.99, 0.995};
    spec.base.detector = DetectorKind::OnOff;
    spec.photon_grid = default_photon_grid();
    spec.vary = VaryAxis{"detector", {"onoff", "pnrd"}};
    return spec;
}

void validate_sweep(const SweepSpec& spec) {
    if (spec.trials < 1) {
        throw ConfigError("trials must be >= 1");
    }
    if (spec.photon_grid.empty()) {
        throw ConfigError("photon grid is empty");
    }
    for (std::size_t k = 0; k < spec.photon_grid.size(); ++k) {
        const double x = spec.photon_grid[k];
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw ConfigError("photon grid values must be finite and nonnegative");
        }
        if (k > 0 && !(x > spec.photon_grid[k - 1])) {
            throw ConfigError("photon grid must be strictly increasing");
        }
    }
    try {
        for (const auto& curve : curves_of(spec)) {
            curve.cfg.validate();
            at_photon(curve.cfg, spec.photon_grid.front());
        }
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

std::vector<CurvePoint> run_sweep(const SweepSpec& spec) {
    validate_sweep(spec);
    const auto curves = curves_of(spec);
    const int m_ary = spec.base.m_ary();

    std::vector<BoundPoint> bounds;
    bounds.reserve(spec.photon_grid.size());
    for (double x : spec.photon_grid) {
        bounds.push_back(bound_point(m_ary, x));
    }

    std::vector<CurvePoint> rows;
    for (std::size_t c = 0; c < curves.size(); ++c) {
        for (std::size_t k = 0; k < spec.photon_grid.size(); ++k) {
            const ReceiverConfig cfg = at_photon(curves[c].cfg, spec.photon_grid[k]);
            CurvePoint row;
            row.curve_label = curves[c].label;
            row.mean_photon = spec.photon_grid[k];
            row.helstrom = bounds[k].helstrom;
            row.sql = bounds[k].sql;
            if (spec.exact && exact_branch_count(cfg) <= kMaxExactBranches) {
                const ExactResult exact = exact_error_probability(cfg);
                row.p_err = exact.p_error;
                row.ci_low = exact.p_error;
                row.ci_high = std::min(1.0, exact.upper());
            } else {
                const std::uint64_t cell = (static_cast<std::uint64_t>(c) << 32) | k;
                const RunSpec run{cfg, spec.trials, derive_stream(spec.master_seed, cell)(), spec.threads};
                const ErrorEstimate est = run_batch(run);
                row.p_err = est.p_hat;
                row.ci_low = est.ci_low;
                row.ci_high = est.ci_high;
            }
            rows.push_back(std::move(row));
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const CurvePoint& a, const CurvePoint& b) {
        return a.curve_label != b.curve_label ? a.curve_label < b.curve_label : a.mean_photon < b.mean_photon;
    });
    return rows;
}

}  // namespace pskrx
