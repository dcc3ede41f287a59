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

#ifndef PSKRX_BOUNDS_HPP
#define PSKRX_BOUNDS_HPP

#include <complex>
#include <vector>

namespace pskrx {

/// Reference error probabilities for equiprobable M-PSK at one mean photon
/// number.
struct BoundPoint {
    double mean_photon = 0.0;
    double helstrom = 0.0;
    double sql = 0.0;
};

/// Eigenvalues of the Gram matrix <alpha_m|alpha_n> of the M-PSK states.
///
/// The matrix is circulant; its eigenvalues (the DFT of the first row) are
/// evaluated through the equivalent positive series
///   lambda_k = M e^{-|alpha|^2} sum_{n = k mod M} |alpha|^{2n} / n!.
/// Complex for interface stability; imaginary parts are zero.
std::vector<std::complex<double>> gram_eigenvalues(int m_ary, double mean_photon);

/// Minimum error probability for discriminating the M-PSK states, reached
/// by the square-root measurement for this symmetric ensemble:
///   1 - (sum_k sqrt(lambda_k))^2 / M^2.
/// Throws NumericalError if an eigenvalue is complex beyond 1e-10 or
/// negative beyond -1e-12.
double helstrom_psk(int m_ary, double mean_photon);

/// Symbol error of ideal heterodyne detection with nearest-phase decisions.
///
/// The outcome density is (1/pi) exp(-|z - alpha|^2). The radial integral
/// over each decision wedge has a closed form; the remaining angular
/// integral is done by adaptive Gauss-Kronrod quadrature to 1e-9 absolute.
/// Throws NumericalError if the quadrature error estimate exceeds that.
double sql_psk(int m_ary, double mean_photon);

BoundPoint bound_point(int m_ary, double mean_photon);

}  // namespace pskrx

#endif  // PSKRX_BOUNDS_HPP
