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

#include "pskrx/device_models.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "pskrx/errors.hpp"

namespace pskrx {

namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

void DeviceParams::validate() const {
    if (!in_unit_interval(eta)) {
        throw DomainError("eta must lie in [0, 1], got " + std::to_string(eta));
    }
    if (!(nu >= 0.0) || !std::isfinite(nu)) {
        throw DomainError("nu must be finite and nonnegative, got " + std::to_string(nu));
    }
    if (!in_unit_interval(tau)) {
        throw DomainError("tau must lie in [0, 1], got " + std::to_string(tau));
    }
    if (!in_unit_interval(xi)) {
        throw DomainError("xi must lie in [0, 1], got " + std::to_string(xi));
    }
}

std::string_view to_string(DetectorKind kind) {
    switch (kind) {
        case DetectorKind::OnOff:
            return "onoff";
        case DetectorKind::PNRD:
            return "pnrd";
    }
    return "unknown";
}

DetectorKind parse_detector_kind(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lower == "onoff" || lower == "on-off" || lower == "on_off") {
        return DetectorKind::OnOff;
    }
    if (lower == "pnrd") {
        return DetectorKind::PNRD;
    }
    throw DomainError("unknown detector kind '" + std::string(text) + "' (expected onoff or pnrd)");
}

double displaced_intensity(ComplexAmplitude signal, ComplexAmplitude local, const DeviceParams& dev) {
    const ComplexAmplitude transmitted = dev.tau == 1.0 ? signal : std::sqrt(dev.tau) * signal;
    const double coherent = std::norm(transmitted - local);
    if (dev.xi == 1.0) {
        return coherent;
    }
    const double incoherent = dev.tau * std::norm(signal) + std::norm(local);
    return (1.0 - dev.xi) * incoherent + dev.xi * coherent;
}

double pnrd_log_likelihood(double intensity, int n, const DeviceParams& dev) {
    const double mean = detector_mean(intensity, dev);
    if (mean == 0.0) {
        return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    if (n == 0) {
        return -mean;
    }
    return -mean + n * std::log(mean) - std::lgamma(n + 1.0);
}

double pnrd_likelihood(double intensity, int n, const DeviceParams& dev) {
    if (n < 0) {
        return 0.0;
    }
    const double mean = detector_mean(intensity, dev);
    if (n == 0) {
        return std::exp(-mean);
    }
    return std::exp(pnrd_log_likelihood(intensity, n, dev));
}

double onoff_likelihood(double intensity, bool clicked, const DeviceParams& dev) {
    const double off = std::exp(-detector_mean(intensity, dev));
    return clicked ? 1.0 - off : off;
}

double detector_likelihood(DetectorKind kind, double intensity, DetectionOutcome outcome, const DeviceParams& dev) {
    return kind == DetectorKind::PNRD ? pnrd_likelihood(intensity, outcome.count, dev)
                                      : onoff_likelihood(intensity, outcome.clicked(), dev);
}

int sample_poisson(double mean, RandomStream& rng) {
    if (mean <= 0.0) {
        return 0;
    }
    if (mean < kPoissonInversionLimit) {
        const double u = rng.uniform();
        double p = std::exp(-mean);
        double cdf = p;
        int k = 0;
        // The cdf can stall just below 1 from rounding; the k cap ends the
        // search in the far tail where the remaining mass is < 1e-300.
        while (u >= cdf && k < 1000) {
            ++k;
            p *= mean / k;
            cdf += p;
        }
        return k;
    }

    // PTRS (Hormann 1993).
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = rng.uniform() - 0.5;
        const double v = rng.uniform();
        const double us = 0.5 - std::abs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr) {
            return static_cast<int>(k);
        }
        if (k < 0.0 || (us < 0.013 && v > us)) {
            continue;
        }
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            -mean + k * loglam - std::lgamma(k + 1.0)) {
            return static_cast<int>(k);
        }
    }
}

DetectionOutcome sample_outcome(double intensity, DetectorKind kind, const DeviceParams& dev, RandomStream& rng) {
    const double mean = detector_mean(intensity, dev);
    if (kind == DetectorKind::PNRD) {
        return {sample_poisson(mean, rng)};
    }
    if (mean <= 0.0) {
        return {0};
    }
    const double p_on = 1.0 - std::exp(-mean);
    return {rng.uniform() < p_on ? 1 : 0};
}

}  // namespace pskrx
