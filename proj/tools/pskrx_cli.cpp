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

// pskrx: error-probability sweeps for the adaptive M-PSK receiver.
//
// Exit codes: 0 success, 2 configuration error, 3 runtime or numerical
// error, 4 I/O error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pskrx/emit.hpp"
#include "pskrx/errors.hpp"
#include "pskrx/montecarlo.hpp"
#include "pskrx/sweep.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitIo = 4;

struct Flags {
    std::string preset;
    int m_ary = 4;
    int partitions = 10;
    double eta = 1.0;
    double nu = 0.0;
    double tau = 1.0;
    double xi = 1.0;
    std::string detector = "onoff";
    double photon_min = 0.05;
    double photon_max = 50.0;
    int photon_steps = 20;
    std::string photon_scale = "geometric";
    std::string vary;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    std::string out = "pskrx_out";
    std::vector<std::string> formats{"csv"};
    unsigned threads = 0;
    bool exact = false;
    int pnrd_cutoff = 0;
};

pskrx::VaryAxis parse_vary(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
        throw pskrx::ConfigError("--vary expects name=v1,v2,..., got '" + text + "'");
    }
    pskrx::VaryAxis axis{text.substr(0, eq), {}};
    std::stringstream values(text.substr(eq + 1));
    std::string item;
    while (std::getline(values, item, ',')) {
        if (item.empty()) {
            throw pskrx::ConfigError("--vary has an empty value in '" + text + "'");
        }
        axis.values.push_back(item);
    }
    return axis;
}

std::filesystem::path output_path(const std::string& stem, pskrx::OutputFormat format, bool single) {
    const std::string ext = "." + std::string(pskrx::extension(format));
    if (single && stem.size() > ext.size() && stem.ends_with(ext)) {
        return stem;
    }
    return stem + ext;
}

// Fully resolved configuration in the same key = value form --config reads.
std::string resolved_config(const pskrx::SweepSpec& spec, const Flags& flags) {
    std::ostringstream os;
    const auto& dev = spec.base.device;
    os << "m-ary = " << spec.base.m_ary() << '\n'
       << "partitions = " << spec.base.n_partitions << '\n'
       << "eta = " << pskrx::format_number(dev.eta) << '\n'
       << "nu = " << pskrx::format_number(dev.nu) << '\n'
       << "tau = " << pskrx::format_number(dev.tau) << '\n'
       << "xi = " << pskrx::format_number(dev.xi) << '\n'
       << "detector = " << pskrx::to_string(spec.base.detector) << '\n';
    if (spec.vary) {
        os << "vary = \"" << spec.vary->name << '=';
        for (std::size_t k = 0; k < spec.vary->values.size(); ++k) {
            os << (k ? "," : "") << spec.vary->values[k];
        }
        os << "\"\n";
    }
    os << "photon-min = " << pskrx::format_number(spec.photon_grid.front()) << '\n'
       << "photon-max = " << pskrx::format_number(spec.photon_grid.back()) << '\n'
       << "photon-steps = " << spec.photon_grid.size() << '\n'
       << "photon-scale = " << flags.photon_scale << '\n'
       << "trials = " << spec.trials << '\n'
       << "seed = " << spec.master_seed << '\n'
       << "threads = " << (spec.threads == 0 ? pskrx::default_thread_count() : spec.threads) << '\n'
       << "exact = " << (spec.exact ? "true" : "false") << '\n'
       << "pnrd-cutoff = " << spec.base.pnrd_count_cutoff << '\n';
    return os.str();
}

pskrx::SweepSpec build_spec(const CLI::App& app, const Flags& flags) {
    pskrx::SweepSpec spec;
    if (!flags.preset.empty()) {
        spec = pskrx::preset(flags.preset);
    } else {
        spec.photon_grid = pskrx::default_photon_grid();
    }
    auto given = [&](const char* name) { return app.count(name) > 0; };

    if (given("--m-ary")) {
        spec.base.constellation = pskrx::Constellation(flags.m_ary, 1.0);
    }
    if (given("--partitions")) {
        spec.base.n_partitions = flags.partitions;
    }
    if (given("--eta")) {
        spec.base.device.eta = flags.eta;
    }
    if (given("--nu")) {
        spec.base.device.nu = flags.nu;
    }
    if (given("--tau")) {
        spec.base.device.tau = flags.tau;
    }
    if (given("--xi")) {
        spec.base.device.xi = flags.xi;
    }
    if (given("--detector")) {
        pskrx::apply_parameter(spec.base, "detector", flags.detector);
    }
    if (given("--pnrd-cutoff")) {
        spec.base.pnrd_count_cutoff = flags.pnrd_cutoff;
    }
    if (given("--photon-min") || given("--photon-max") || given("--photon-steps") || given("--photon-scale")) {
        const auto scale = flags.photon_scale == "linear" ? pskrx::GridScale::Linear : pskrx::GridScale::Geometric;
        spec.photon_grid = pskrx::make_photon_grid(flags.photon_min, flags.photon_max, flags.photon_steps, scale);
    }
    if (given("--vary")) {
        spec.vary = parse_vary(flags.vary);
    }
    spec.trials = flags.trials;
    spec.master_seed = flags.seed;
    spec.threads = flags.threads;
    spec.exact = flags.exact;
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Error-probability sweeps for the adaptive M-PSK feedback receiver"};
    app.set_config("--config", "", "Plain-text key = value file; command-line flags take precedence");
    Flags flags;

    app.add_option("--preset", flags.preset, "Experimental parameter preset")->check(CLI::IsMember({"fig2e", "fig3e"}));
    app.add_option("--m-ary", flags.m_ary, "Constellation size M")->check(CLI::Range(2, 1 << 16));
    app.add_option("--partitions", flags.partitions, "Durations per symbol N")->check(CLI::PositiveNumber);
    app.add_option("--eta", flags.eta, "Detector quantum efficiency");
    app.add_option("--nu", flags.nu, "Mean dark counts per duration");
    app.add_option("--tau", flags.tau, "Beam-splitter transmittance");
    app.add_option("--xi", flags.xi, "Mode-overlap fraction (1 = perfect)");
    app.add_option("--detector", flags.detector, "onoff or pnrd");
    app.add_option("--photon-min", flags.photon_min, "Smallest mean photon number");
    app.add_option("--photon-max", flags.photon_max, "Largest mean photon number");
    app.add_option("--photon-steps", flags.photon_steps, "Grid points")->check(CLI::PositiveNumber);
    app.add_option("--photon-scale", flags.photon_scale, "geometric or linear")
        ->check(CLI::IsMember({"geometric", "linear"}));
    app.add_option("--vary", flags.vary, "Overlay curves: name=v1,v2,... (eta, nu, tau, xi, detector)");
    app.add_option("--trials", flags.trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);
    app.add_option("--seed", flags.seed, "Master seed");
    app.add_option("--out", flags.out, "Output path stem");
    app.add_option("--format", flags.formats, "Comma-separated list of csv, json, svg")->delimiter(',');
    app.add_option("--threads", flags.threads, "Worker threads (default: $PSKRX_THREADS or all cores)");
    app.add_flag("--exact", flags.exact, "Use exact enumeration where feasible");
    app.add_option("--pnrd-cutoff", flags.pnrd_cutoff, "Per-duration count limit for exact PNRD enumeration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    pskrx::SweepSpec spec;
    std::vector<pskrx::OutputFormat> formats;
    try {
        spec = build_spec(app, flags);
        for (const auto& f : flags.formats) {
            formats.push_back(pskrx::parse_output_format(f));
        }
        if (formats.empty()) {
            throw pskrx::ConfigError("--format needs at least one of csv, json, svg");
        }
        pskrx::validate_sweep(spec);
    } catch (const std::invalid_argument& e) {
        std::cerr << "pskrx: configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "pskrx: configuration error: " << e.what() << '\n';
        return kExitConfig;
    }

    const auto parent = std::filesystem::path(flags.out).parent_path();
    if (!parent.empty() && !std::filesystem::is_directory(parent)) {
        std::cerr << "pskrx: I/O error: " << parent.string() << ": no such directory\n";
        return kExitIo;
    }

    std::vector<pskrx::CurvePoint> rows;
    try {
        rows = pskrx::run_sweep(spec);
    } catch (const pskrx::ConfigError& e) {
        std::cerr << "pskrx: configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "pskrx: runtime error: " << e.what() << '\n';
        return kExitRuntime;
    }

    try {
        const std::string sidecar = resolved_config(spec, flags);
        for (const auto format : formats) {
            const auto path = output_path(flags.out, format, formats.size() == 1);
            pskrx::emit(rows, format, path);
            const auto sidecar_path = path.string() + ".cfg";
            std::ofstream cfg(sidecar_path, std::ios::binary | std::ios::trunc);
            if (!(cfg << sidecar) || !cfg.flush()) {
                throw pskrx::IoError(sidecar_path, "write failed");
            }
            std::cout << "wrote " << path.string() << '\n';
        }
    } catch (const pskrx::IoError& e) {
        std::cerr << "pskrx: I/O error: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
