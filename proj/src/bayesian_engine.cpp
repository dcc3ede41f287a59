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

#include "pskrx/bayesian_engine.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pskrx/errors.hpp"

namespace pskrx {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_length(std::size_t expected, std::size_t got) {
    if (expected != got) {
        throw DomainError("likelihood vector has length " + std::to_string(got) + ", expected " +
                          std::to_string(expected));
    }
}

void normalize(std::vector<double>& probs) {
    double total = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw DomainError("probabilities must be finite and nonnegative");
        }
        total += p;
    }
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw DomainError("probabilities cannot be normalized (total " + std::to_string(total) + ")");
    }
    for (double& p : probs) {
        p /= total;
    }
}

}  // namespace

PosteriorState::PosteriorState(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) {
        throw DomainError("posterior needs at least one hypothesis");
    }
    normalize(probs_);
}

PosteriorState initial_prior(int m_ary, std::optional<std::span<const double>> priors) {
    if (m_ary < 1) {
        throw DomainError("hypothesis count must be positive");
    }
    if (!priors) {
        return PosteriorState(std::vector<double>(static_cast<std::size_t>(m_ary), 1.0 / m_ary));
    }
    if (priors->size() != static_cast<std::size_t>(m_ary)) {
        throw DomainError("prior has length " + std::to_string(priors->size()) + ", expected " +
                          std::to_string(m_ary));
    }
    return PosteriorState(std::vector<double>(priors->begin(), priors->end()));
}

void update_log_in_place(std::span<double> probs, std::span<const double> log_likelihoods) {
    check_length(probs.size(), log_likelihoods.size());
    double peak = kNegInf;
    for (std::size_t l = 0; l < probs.size(); ++l) {
        const double a = probs[l] > 0.0 ? std::log(probs[l]) + log_likelihoods[l] : kNegInf;
        probs[l] = a;
        if (a > peak) {
            peak = a;
        }
    }
    if (peak == kNegInf) {
        throw DegenerateEvidenceError("observed outcome has zero probability under every hypothesis");
    }
    double total = 0.0;
    for (double& a : probs) {
        a = a == kNegInf ? 0.0 : std::exp(a - peak);
        total += a;
    }
    for (double& p : probs) {
        p /= total;
    }
}

void update_in_place(std::span<double> probs, std::span<const double> likelihoods) {
    check_length(probs.size(), likelihoods.size());
    bool tiny = false;
    for (double value : likelihoods) {
        if (!(value >= 0.0)) {
            throw DomainError("likelihoods must be nonnegative");
        }
        tiny = tiny || (value > 0.0 && value < kLogDomainThreshold);
    }
    if (!tiny) {
        double total = 0.0;
        for (std::size_t l = 0; l < probs.size(); ++l) {
            total += probs[l] * likelihoods[l];
        }
        if (total > 0.0 && std::isfinite(total)) {
            for (std::size_t l = 0; l < probs.size(); ++l) {
                probs[l] = probs[l] * likelihoods[l] / total;
            }
            return;
        }
    }
    double logs[64];
    std::vector<double> heap;
    std::span<double> log_view;
    if (likelihoods.size() <= std::size(logs)) {
        log_view = std::span<double>(logs, likelihoods.size());
    } else {
        heap.resize(likelihoods.size());
        log_view = heap;
    }
    for (std::size_t l = 0; l < likelihoods.size(); ++l) {
        log_view[l] = likelihoods[l] > 0.0 ? std::log(likelihoods[l]) : kNegInf;
    }
    update_log_in_place(probs, log_view);
}

PosteriorState update(const PosteriorState& state, std::span<const double> likelihoods) {
    std::vector<double> next(state.probs().begin(), state.probs().end());
    update_in_place(next, likelihoods);
    return PosteriorState(PosteriorState::Trusted{}, std::move(next));
}

PosteriorState update_log(const PosteriorState& state, std::span<const double> log_likelihoods) {
    std::vector<double> next(state.probs().begin(), state.probs().end());
    update_log_in_place(next, log_likelihoods);
    return PosteriorState(PosteriorState::Trusted{}, std::move(next));
}

SymbolIndex map_hypothesis(std::span<const double> probs) {
    double peak = probs.empty() ? 0.0 : probs[0];
    for (double p : probs) {
        peak = p > peak ? p : peak;
    }
    const double floor = peak * (1.0 - kTieTolerance);
    for (std::size_t m = 0; m < probs.size(); ++m) {
        if (probs[m] >= floor) {
            return static_cast<SymbolIndex>(m);
        }
    }
    return 0;
}

SymbolIndex map_hypothesis(const PosteriorState& state) { return map_hypothesis(state.probs()); }

}  // namespace pskrx
