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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pskrx/bounds.hpp"
#include "pskrx/errors.hpp"
#include "pskrx/montecarlo.hpp"
#include "pskrx/receiver_sim.hpp"
#include "pskrx/sweep.hpp"

namespace py = pybind11;
using namespace pskrx;

namespace {

ReceiverConfig make_config(int m_ary, double mean_photon, int n_partitions, const DeviceParams& device,
                           const std::string& detector, std::optional<std::vector<double>> priors,
                           std::optional<DeviceParams> inference_device, int pnrd_count_cutoff) {
    ReceiverConfig cfg;
    cfg.constellation = Constellation::from_mean_photon(m_ary, mean_photon);
    cfg.n_partitions = n_partitions;
    cfg.device = device;
    cfg.detector = parse_detector_kind(detector);
    cfg.priors = std::move(priors);
    cfg.inference_device = inference_device;
    cfg.pnrd_count_cutoff = pnrd_count_cutoff;
    cfg.validate();
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Adaptive M-PSK feedback receiver core";

    py::register_exception<DegenerateEvidenceError>(m, "DegenerateEvidenceError", PyExc_ArithmeticError);
    py::register_exception<EnumerationTooLargeError>(m, "EnumerationTooLargeError", PyExc_RuntimeError);
    py::register_exception<TrialError>(m, "TrialError", PyExc_RuntimeError);

    py::class_<DeviceParams>(m, "DeviceParams")
        .def(py::init([](double eta, double nu, double tau, double xi) {
                 DeviceParams d{eta, nu, tau, xi};
                 d.validate();
                 return d;
             }),
             py::arg("eta") = 1.0, py::arg("nu") = 0.0, py::arg("tau") = 1.0, py::arg("xi") = 1.0)
        .def_readonly("eta", &DeviceParams::eta)
        .def_readonly("nu", &DeviceParams::nu)
        .def_readonly("tau", &DeviceParams::tau)
        .def_readonly("xi", &DeviceParams::xi)
        .def("__eq__", [](const DeviceParams& a, const DeviceParams& b) { return a == b; })
        .def("__repr__", [](const DeviceParams& d) {
            return "DeviceParams(eta=" + std::to_string(d.eta) + ", nu=" + std::to_string(d.nu) +
                   ", tau=" + std::to_string(d.tau) + ", xi=" + std::to_string(d.xi) + ")";
        });

    py::class_<ReceiverConfig>(m, "ReceiverConfig")
        .def(py::init(&make_config), py::arg("m_ary") = 4, py::arg("mean_photon") = 1.0,
             py::arg("n_partitions") = 10, py::arg("device") = DeviceParams{}, py::arg("detector") = "onoff",
             py::arg("priors") = py::none(), py::arg("inference_device") = py::none(),
             py::arg("pnrd_count_cutoff") = 0)
        .def_property_readonly("m_ary", &ReceiverConfig::m_ary)
        .def_property_readonly("mean_photon", [](const ReceiverConfig& c) { return c.constellation.mean_photon(); })
        .def_readonly("n_partitions", &ReceiverConfig::n_partitions)
        .def_readonly("device", &ReceiverConfig::device)
        .def_property_readonly("detector",
                               [](const ReceiverConfig& c) { return std::string(to_string(c.detector)); });

    py::class_<ErrorEstimate>(m, "ErrorEstimate")
        .def_readonly("errors", &ErrorEstimate::errors)
        .def_readonly("trials", &ErrorEstimate::trials)
        .def_readonly("p_hat", &ErrorEstimate::p_hat)
        .def_readonly("ci_low", &ErrorEstimate::ci_low)
        .def_readonly("ci_high", &ErrorEstimate::ci_high)
        .def_readonly("ci_level", &ErrorEstimate::ci_level)
        .def_readonly("sent_per_symbol", &ErrorEstimate::sent_per_symbol)
        .def_readonly("errors_per_symbol", &ErrorEstimate::errors_per_symbol);

    py::class_<ExactResult>(m, "ExactResult")
        .def_readonly("p_error", &ExactResult::p_error)
        .def_readonly("residual_mass", &ExactResult::residual_mass)
        .def_readonly("conditional_error", &ExactResult::conditional_error)
        .def_readonly("conditional_residual", &ExactResult::conditional_residual)
        .def_readonly("branch_count", &ExactResult::branch_count)
        .def_readonly("count_cutoff", &ExactResult::count_cutoff)
        .def_property_readonly("upper", &ExactResult::upper);

    py::class_<CurvePoint>(m, "CurvePoint")
        .def_readonly("curve_label", &CurvePoint::curve_label)
        .def_readonly("mean_photon", &CurvePoint::mean_photon)
        .def_readonly("p_err", &CurvePoint::p_err)
        .def_readonly("ci_low", &CurvePoint::ci_low)
        .def_readonly("ci_high", &CurvePoint::ci_high)
        .def_readonly("helstrom", &CurvePoint::helstrom)
        .def_readonly("sql", &CurvePoint::sql);

    m.def("exact_error_probability", &exact_error_probability, py::arg("config"),
          py::arg("max_branches") = kMaxExactBranches, py::call_guard<py::gil_scoped_release>());
    m.def(
        "run_batch",
        [](const ReceiverConfig& cfg, std::uint64_t trials, std::uint64_t seed, unsigned threads, double level) {
            return run_batch(RunSpec{cfg, trials, seed, threads}, level);
        },
        py::arg("config"), py::arg("trials") = 1'000'000, py::arg("seed") = 0, py::arg("threads") = 0,
        py::arg("level") = kDefaultConfidence, py::call_guard<py::gil_scoped_release>());
    m.def("helstrom_psk", &helstrom_psk, py::arg("m_ary"), py::arg("mean_photon"));
    m.def("sql_psk", &sql_psk, py::arg("m_ary"), py::arg("mean_photon"));
    m.def("wilson_interval", &wilson_interval, py::arg("errors"), py::arg("trials"),
          py::arg("level") = kDefaultConfidence);
    m.def("default_photon_grid", &default_photon_grid);
    m.def(
        "run_preset",
        [](const std::string& name, std::optional<std::vector<double>> grid, std::uint64_t trials,
           std::uint64_t seed, unsigned threads) {
            SweepSpec spec = preset(name);
            if (grid) {
                spec.photon_grid = *grid;
            }
            spec.trials = trials;
            spec.master_seed = seed;
            spec.threads = threads;
            py::gil_scoped_release release;
            return run_sweep(spec);
        },
        py::arg("name"), py::arg("photon_grid") = py::none(), py::arg("trials") = 1'000'000, py::arg("seed") = 1,
        py::arg("threads") = 0);
}
