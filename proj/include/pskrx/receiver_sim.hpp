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

#ifndef PSKRX_RECEIVER_SIM_HPP
#define PSKRX_RECEIVER_SIM_HPP

#include <optional>
#include <vector>

#include "pskrx/bayesian_engine.hpp"
#include "pskrx/constellation.hpp"
#include "pskrx/device_models.hpp"
#include "pskrx/rng.hpp"

namespace pskrx {

/// Everything that defines one adaptive receiver.
struct ReceiverConfig {
    Constellation constellation{4, 1.0};
    int n_partitions = 10;
    DeviceParams device{};
    DetectorKind detector = DetectorKind::OnOff;
    /// Symbol priors; uniform when empty.
    std::optional<std::vector<double>> priors;
    /// Largest per-duration count the exact evaluator enumerates for PNRD.
    /// Zero selects ceil(mean + 10 sqrt(mean) + 10) from the largest
    /// detector mean the config can produce.
    int pnrd_count_cutoff = 0;
    /// Device model the receiver believes in when updating its posterior.
    /// Empty means the physical device (matched model).
    std::optional<DeviceParams> inference_device;

    int m_ary() const { return constellation.m_ary(); }
    const DeviceParams& belief() const { return inference_device ? *inference_device : device; }

    /// Throws DomainError on any out-of-range field.
    void validate() const;
};

struct TrialRecord {
    SymbolIndex transmitted = 0;
    std::vector<DetectionOutcome> outcomes;
    /// Hypothesis whose nulling field was applied in each duration.
    std::vector<SymbolIndex> hypotheses;
    SymbolIndex decided = 0;
    bool correct = false;
};

/// Precomputed per-config tables for the trial loop.
///
/// All N durations share the same amplitudes, so the detector mean for
/// (local-field hypothesis h, signal symbol l) is one M x M table for the
/// physical device and one for the receiver's belief. Immutable after
/// construction and safe to share between threads.
class ReceiverModel {
  public:
    explicit ReceiverModel(const ReceiverConfig& cfg);

    const ReceiverConfig& config() const { return cfg_; }
    int m_ary() const { return m_ary_; }
    int n_partitions() const { return cfg_.n_partitions; }

    /// Displaced intensity with the field for `hypothesis` applied to symbol `signal`.
    double physical_intensity(SymbolIndex hypothesis, SymbolIndex signal) const {
        return intensity_[index(hypothesis, signal)];
    }
    double physical_mean(SymbolIndex hypothesis, SymbolIndex signal) const {
        return phys_mean_[index(hypothesis, signal)];
    }
    double belief_mean(SymbolIndex hypothesis, SymbolIndex signal) const {
        return belief_mean_[index(hypothesis, signal)];
    }
    /// Largest detector mean over both tables.
    double max_mean() const { return max_mean_; }

    /// Physical probability of `outcome` when `signal` is sent and the
    /// field for `hypothesis` is applied.
    double physical_likelihood(SymbolIndex hypothesis, SymbolIndex signal, DetectionOutcome outcome) const;

    /// Replaces `probs` with the posterior after observing `outcome` under
    /// `hypothesis`'s field.
    void update_posterior(std::span<double> probs, SymbolIndex hypothesis, DetectionOutcome outcome) const;

    std::span<const double> priors() const { return priors_; }

    /// One symbol through the receiver. Fills `record` when non-null.
    SymbolIndex run(SymbolIndex transmitted, RandomStream& rng, TrialRecord* record = nullptr) const;

  private:
    std::size_t index(SymbolIndex h, SymbolIndex l) const {
        return static_cast<std::size_t>(h) * static_cast<std::size_t>(m_ary_) + static_cast<std::size_t>(l);
    }

    ReceiverConfig cfg_;
    int m_ary_;
    std::vector<double> priors_;
    std::vector<double> intensity_;
    std::vector<double> phys_mean_;
    std::vector<double> phys_off_;
    std::vector<double> belief_mean_;
    std::vector<double> belief_log_mean_;
    std::vector<double> belief_off_;
    std::vector<double> belief_on_;
    double max_mean_ = 0.0;
};

/// One symbol through a freshly built model. Throws IndexError for a bad
/// `transmitted` and propagates DegenerateEvidenceError.
TrialRecord run_trial(const ReceiverConfig& cfg, SymbolIndex transmitted, RandomStream& rng);

struct ExactResult {
    /// Prior-weighted error over all enumerated outcome paths.
    double p_error = 0.0;
    /// Probability mass of paths cut off by the PNRD count limit; the true
    /// error lies in [p_error, p_error + residual_mass].
    double residual_mass = 0.0;
    /// P(error | symbol m sent), enumerated paths only.
    std::vector<double> conditional_error;
    /// Tail mass dropped for each transmitted symbol.
    std::vector<double> conditional_residual;
    /// Branch count used for the feasibility check.
    double branch_count = 0.0;
    int count_cutoff = 1;

    double upper() const { return p_error + residual_mass; }
};

inline constexpr double kMaxExactBranches = 1e7;

/// Outcome count per duration the exact evaluator enumerates.
int exact_count_cutoff(const ReceiverModel& model);

/// Number of outcome sequences exact evaluation would visit.
double exact_branch_count(const ReceiverConfig& cfg);

/// Exact error probability by exhaustive enumeration of outcome sequences.
/// Throws EnumerationTooLargeError when the branch count exceeds
/// `max_branches`.
ExactResult exact_error_probability(const ReceiverConfig& cfg, double max_branches = kMaxExactBranches);

}  // namespace pskrx

#endif  // PSKRX_RECEIVER_SIM_HPP
