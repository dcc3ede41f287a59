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

#ifndef PSKRX_BAYESIAN_ENGINE_HPP
#define PSKRX_BAYESIAN_ENGINE_HPP

#include <optional>
#include <span>
#include <vector>

#include "pskrx/constellation.hpp"

namespace pskrx {

/// Probability vector over the M symbol hypotheses. Entries lie in [0, 1]
/// and sum to one.
class PosteriorState {
  public:
    /// Validates and normalizes `probs`. Throws DomainError if an entry is
    /// negative or non-finite or the total is zero.
    explicit PosteriorState(std::vector<double> probs);

    int size() const { return static_cast<int>(probs_.size()); }
    std::span<const double> probs() const { return probs_; }
    double operator[](SymbolIndex m) const { return probs_[static_cast<std::size_t>(m)]; }

  private:
    struct Trusted {};
    PosteriorState(Trusted, std::vector<double> probs) : probs_(std::move(probs)) {}

    friend PosteriorState update(const PosteriorState&, std::span<const double>);
    friend PosteriorState update_log(const PosteriorState&, std::span<const double>);

    std::vector<double> probs_;
};

/// Uniform 1/M when `priors` is empty, otherwise a normalized copy of it.
/// Throws DomainError for negative entries, a wrong length, or a zero total.
PosteriorState initial_prior(int m_ary, std::optional<std::span<const double>> priors = std::nullopt);

/// Bayes rule with per-hypothesis likelihoods. Falls back to log-domain
/// arithmetic when a likelihood is below `kLogDomainThreshold` or the
/// linear products underflow. Throws DegenerateEvidenceError if every
/// prior-likelihood product is exactly zero.
PosteriorState update(const PosteriorState& state, std::span<const double> likelihoods);

/// Bayes rule with log-likelihoods (-infinity allowed).
PosteriorState update_log(const PosteriorState& state, std::span<const double> log_likelihoods);

/// Arg-max of the posterior. Entries within a relative `kTieTolerance` of
/// the maximum count as tied and the lowest index wins.
SymbolIndex map_hypothesis(const PosteriorState& state);
SymbolIndex map_hypothesis(std::span<const double> probs);

inline constexpr double kLogDomainThreshold = 1e-280;
inline constexpr double kTieTolerance = 1e-10;

// Allocation-free kernels behind `update` / `update_log`, used by the trial
// loop. `probs` must already be a valid distribution.
void update_in_place(std::span<double> probs, std::span<const double> likelihoods);
void update_log_in_place(std::span<double> probs, std::span<const double> log_likelihoods);

}  // namespace pskrx

#endif  // PSKRX_BAYESIAN_ENGINE_HPP
