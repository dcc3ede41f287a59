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

#include "pskrx/constellation.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pskrx/errors.hpp"

namespace pskrx {

Constellation::Constellation(int m_ary, double alpha_mag, double phase_offset)
    : m_ary_(m_ary), alpha_mag_(alpha_mag), phase_offset_(phase_offset) {
    if (m_ary < 2) {
        throw DomainError("constellation needs M >= 2, got " + std::to_string(m_ary));
    }
    if (!(alpha_mag >= 0.0) || !std::isfinite(alpha_mag)) {
        throw DomainError("amplitude magnitude must be finite and nonnegative");
    }
    if (!std::isfinite(phase_offset)) {
        throw DomainError("phase offset must be finite");
    }
}

Constellation Constellation::from_mean_photon(int m_ary, double mean_photon, double phase_offset) {
    if (!(mean_photon >= 0.0)) {
        throw DomainError("mean photon number must be nonnegative");
    }
    return Constellation(m_ary, std::sqrt(mean_photon), phase_offset);
}

ComplexAmplitude symbol_amplitude(const Constellation& c, SymbolIndex m) {
    if (m < 0 || m >= c.m_ary()) {
        throw IndexError("symbol index " + std::to_string(m) + " outside [0, " + std::to_string(c.m_ary()) +
                         ")");
    }
    if (m == 0 && c.phase_offset() == 0.0) {
        return {c.alpha_mag(), 0.0};
    }
    const double phase = c.phase_offset() + 2.0 * std::numbers::pi * m / c.m_ary();
    return std::polar(c.alpha_mag(), phase);
}

PartitionedSymbol partition(const Constellation& c, SymbolIndex m, int n_partitions) {
    if (n_partitions < 1) {
        throw DomainError("partition count must be >= 1, got " + std::to_string(n_partitions));
    }
    const ComplexAmplitude a = symbol_amplitude(c, m);
    if (n_partitions == 1) {
        return {a, 1};
    }
    return {a / std::sqrt(static_cast<double>(n_partitions)), n_partitions};
}

ComplexAmplitude local_field(const Constellation& c, SymbolIndex hypothesis, int n_partitions, double tau) {
    if (!(tau >= 0.0 && tau <= 1.0)) {
        throw DomainError("transmittance must lie in [0, 1]");
    }
    const ComplexAmplitude a = partition(c, hypothesis, n_partitions).per_duration_amplitude;
    if (tau == 1.0) {
        return a;
    }
    return std::sqrt(tau) * a;
}

}  // namespace pskrx
