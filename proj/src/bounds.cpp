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

#include "pskrx/bounds.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "pskrx/errors.hpp"

namespace pskrx {

namespace {

void check_args(int m_ary, double mean_photon) {
    if (m_ary < 2) {
        throw DomainError("bounds need M >= 2, got " + std::to_string(m_ary));
    }
    if (!(mean_photon >= 0.0) || !std::isfinite(mean_photon)) {
        throw DomainError("mean photon number must be finite and nonnegative");
    }
}

constexpr double kImagTolerance = 1e-10;
constexpr double kNegativeTolerance = -1e-12;
constexpr double kQuadratureTolerance = 1e-9;

}  // namespace

std::vector<std::complex<double>> gram_eigenvalues(int m_ary, double mean_photon) {
    check_args(m_ary, mean_photon);
    // The Gram matrix is circulant with eigenvalues
    //   lambda_k = M e^{-x} sum_{n = k mod M} x^n / n!,
    // a sum of positive terms, so even tiny eigenvalues keep full relative
    // precision (a direct DFT of the first row cancels them away).
    std::vector<std::complex<double>> eig(static_cast<std::size_t>(m_ary), 0.0);
    if (mean_photon == 0.0) {
        eig[0] = static_cast<double>(m_ary);
        return eig;
    }
    const double log_x = std::log(mean_photon);
    const auto last = static_cast<long>(std::ceil(mean_photon + 40.0 * std::sqrt(mean_photon) + 60.0));
    const double m = static_cast<double>(m_ary);
    for (long n = 0; n <= std::max<long>(last, m_ary - 1); ++n) {
        const double dn = static_cast<double>(n);
        const double term = std::exp(-mean_photon + dn * log_x - std::lgamma(dn + 1.0));
        eig[static_cast<std::size_t>(n % m_ary)] += m * term;
    }
    return eig;
}

double helstrom_psk(int m_ary, double mean_photon) {
    const auto eig = gram_eigenvalues(m_ary, mean_photon);
    std::vector<double> roots(eig.size());
    for (std::size_t k = 0; k < eig.size(); ++k) {
        const auto lambda = eig[k];
        if (std::abs(lambda.imag()) > kImagTolerance || lambda.real() < kNegativeTolerance) {
            throw NumericalError("Gram eigenvalue " + std::to_string(k) + " = (" + std::to_string(lambda.real()) +
                                 ", " + std::to_string(lambda.imag()) + ") is not a nonnegative real");
        }
        roots[k] = std::sqrt(std::max(lambda.real(), 0.0));
    }
    // With sum_k lambda_k = M, 1 - (sum_k r_k)^2 / M^2 equals
    // sum_{k<l} (r_k - r_l)^2 / M^2, which avoids cancelling against 1.
    double spread = 0.0;
    for (std::size_t k = 0; k < roots.size(); ++k) {
        for (std::size_t l = k + 1; l < roots.size(); ++l) {
            const double d = roots[k] - roots[l];
            spread += d * d;
        }
    }
    const double m = static_cast<double>(m_ary);
    return std::clamp(spread / (m * m), 0.0, 1.0);
}

double sql_psk(int m_ary, double mean_photon) {
    check_args(m_ary, mean_photon);
    const double a = std::sqrt(mean_photon);
    const double a2 = mean_photon;
    const double half_wedge = std::numbers::pi / m_ary;
    const double sqrt_pi_half = std::sqrt(std::numbers::pi) / 2.0;

    // Radially integrated density along angle theta for the symbol on the
    // positive real axis:
    //   (1/pi) exp(-a^2 sin^2) [exp(-a^2 cos^2)/2 + c sqrt(pi)/2 (1 + erf c)],  c = a cos
    auto angular_density = [&](double theta) {
        const double c = a * std::cos(theta);
        const double s = std::sin(theta);
        const double radial = 0.5 * std::exp(-a2) + std::exp(-a2 * s * s) * c * sqrt_pi_half * std::erfc(-c);
        return radial / std::numbers::pi;
    };

    double error_estimate = 0.0;
    const double mass = 2.0 * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                                  angular_density, 0.0, half_wedge, 15, 1e-14, &error_estimate);
    if (!(2.0 * error_estimate <= kQuadratureTolerance)) {
        throw NumericalError("heterodyne wedge quadrature reached only " + std::to_string(2.0 * error_estimate));
    }
    return std::clamp(1.0 - mass, 0.0, 1.0);
}

BoundPoint bound_point(int m_ary, double mean_photon) {
    return {mean_photon, helstrom_psk(m_ary, mean_photon), sql_psk(m_ary, mean_photon)};
}

}  // namespace pskrx
