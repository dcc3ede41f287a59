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

#ifndef PSKRX_ERRORS_HPP
#define PSKRX_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pskrx {

/// Symbol index outside [0, M).
struct IndexError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Parameter outside its mathematical domain (negative photon number,
/// transmittance above one, unnormalizable prior, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Every hypothesis assigned zero probability to an observed outcome.
struct DegenerateEvidenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact enumeration would visit more branches than allowed.
struct EnumerationTooLargeError : std::runtime_error {
    EnumerationTooLargeError(double branches, double limit)
        : std::runtime_error("enumeration needs " + std::to_string(branches) +
                             " branches, limit is " + std::to_string(limit)),
          branch_count(branches) {}
    double branch_count;
};

/// A numerical routine could not reach its tolerance or found an
/// internally inconsistent value.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Trial failure inside a batch, tagged with the failing trial index.
struct TrialError : std::runtime_error {
    TrialError(std::uint64_t trial, const std::string& what)
        : std::runtime_error("trial " + std::to_string(trial) + ": " + what), trial_index(trial) {}
    std::uint64_t trial_index;
};

/// Invalid sweep or CLI configuration.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Output could not be written.
struct IoError : std::runtime_error {
    IoError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what), path(path) {}
    std::string path;
};

}  // namespace pskrx

#endif  // PSKRX_ERRORS_HPP
