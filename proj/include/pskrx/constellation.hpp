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

#ifndef PSKRX_CONSTELLATION_HPP
#define PSKRX_CONSTELLATION_HPP

#include <complex>

namespace pskrx {

/// Coherent-state amplitude in photon-number units: |a|^2 is the mean
/// photon number of the state.
using ComplexAmplitude = std::complex<double>;

using SymbolIndex = int;

/// Symmetric M-ary PSK constellation.
///
/// Symbol m has amplitude alpha_mag * exp(i (phase_offset + 2 pi m / M)).
/// The default offset of zero puts symbol 0 on the positive real axis. The
/// receiver's error probability does not depend on the offset; it exists so
/// the rotation invariance can be checked.
class Constellation {
  public:
    Constellation(int m_ary, double alpha_mag, double phase_offset = 0.0);

    /// Builds a constellation from the mean photon number |alpha|^2.
    static Constellation from_mean_photon(int m_ary, double mean_photon, double phase_offset = 0.0);

    int m_ary() const { return m_ary_; }
    double alpha_mag() const { return alpha_mag_; }
    double mean_photon() const { return alpha_mag_ * alpha_mag_; }
    double phase_offset() const { return phase_offset_; }

  private:
    int m_ary_;
    double alpha_mag_;
    double phase_offset_;
};

/// One of the N equal durations of a symbol.
struct PartitionedSymbol {
    ComplexAmplitude per_duration_amplitude;
    int duration_count;
};

/// alpha_m. Throws IndexError for m outside [0, M).
ComplexAmplitude symbol_amplitude(const Constellation& c, SymbolIndex m);

/// alpha_m / sqrt(N). Throws DomainError for N < 1.
PartitionedSymbol partition(const Constellation& c, SymbolIndex m, int n_partitions);

/// Nulling field for `hypothesis`: sqrt(tau) * alpha_h / sqrt(N).
///
/// Computed as sqrt(tau) times the partitioned amplitude so that nulling the
/// true symbol with tau = 1 cancels to exactly zero.
ComplexAmplitude local_field(const Constellation& c, SymbolIndex hypothesis, int n_partitions, double tau);

}  // namespace pskrx

#endif  // PSKRX_CONSTELLATION_HPP
