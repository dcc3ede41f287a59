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

#ifndef PSKRX_DEVICE_MODELS_HPP
#define PSKRX_DEVICE_MODELS_HPP

#include <string>
#include <string_view>

#include "pskrx/constellation.hpp"
#include "pskrx/rng.hpp"

namespace pskrx {

/// Imperfections of the displacement and detection stages.
///
///   eta  detector quantum efficiency, [0, 1]
///   nu   mean dark counts per duration, >= 0
///   tau  beam-splitter transmittance, [0, 1]
///   xi   mode-overlap fraction, [0, 1]; xi = 1 is perfect overlap
struct DeviceParams {
    double eta = 1.0;
    double nu = 0.0;
    double tau = 1.0;
    double xi = 1.0;

    static constexpr DeviceParams ideal() { return {}; }

    /// Throws DomainError naming the first field out of range.
    void validate() const;

    bool operator==(const DeviceParams&) const = default;
};

enum class DetectorKind { OnOff, PNRD };

std::string_view to_string(DetectorKind kind);
/// Accepts "onoff" / "on-off" / "pnrd" (case-insensitive). Throws DomainError otherwise.
DetectorKind parse_detector_kind(std::string_view text);

/// Photon count observed in one duration. For on-off detectors only
/// count == 0 (off) versus count > 0 (on) carries information.
struct DetectionOutcome {
    int count = 0;
    bool clicked() const { return count > 0; }
    bool operator==(const DetectionOutcome&) const = default;
};

/// Mean photon number reaching the detector after displacement:
/// (1 - xi)(tau |a|^2 + |b|^2) + xi |sqrt(tau) a - b|^2.
double displaced_intensity(ComplexAmplitude signal, ComplexAmplitude local, const DeviceParams& dev);

/// Poisson mean of the detector output, nu + eta * intensity.
inline double detector_mean(double intensity, const DeviceParams& dev) { return dev.nu + dev.eta * intensity; }

/// log P(n | intensity) for a photon-number-resolving detector. Returns
/// -infinity for n > 0 at zero mean.
double pnrd_log_likelihood(double intensity, int n, const DeviceParams& dev);

/// Poisson probability of counting n photons.
double pnrd_likelihood(double intensity, int n, const DeviceParams& dev);

/// Probability of an off (`clicked == false`) or on result.
double onoff_likelihood(double intensity, bool clicked, const DeviceParams& dev);

/// Likelihood of `outcome` under the given detector kind.
double detector_likelihood(DetectorKind kind, double intensity, DetectionOutcome outcome, const DeviceParams& dev);

/// Poisson draw: sequential inversion below `kPoissonInversionLimit`, PTRS
/// transformed rejection above.
int sample_poisson(double mean, RandomStream& rng);

inline constexpr double kPoissonInversionLimit = 30.0;

/// Stochastic detector response to the given intensity.
DetectionOutcome sample_outcome(double intensity, DetectorKind kind, const DeviceParams& dev, RandomStream& rng);

}  // namespace pskrx

#endif  // PSKRX_DEVICE_MODELS_HPP
