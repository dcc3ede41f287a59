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

#ifndef PSKRX_MONTECARLO_HPP
#define PSKRX_MONTECARLO_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "pskrx/receiver_sim.hpp"

namespace pskrx {

struct RunSpec {
    ReceiverConfig cfg;
    std::uint64_t trials = 1'000'000;
    std::uint64_t master_seed = 0;
    /// Worker count; 0 picks `default_thread_count()`. Never affects results.
    unsigned threads = 0;
};

/// Symbol-error estimate with a Wilson score interval.
struct ErrorEstimate {
    std::uint64_t errors = 0;
    std::uint64_t trials = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    double ci_level = 0.99;
    /// Per transmitted symbol: how often it was sent and how often missed.
    std::vector<std::uint64_t> sent_per_symbol;
    std::vector<std::uint64_t> errors_per_symbol;

    bool operator==(const ErrorEstimate&) const = default;
};

inline constexpr double kDefaultConfidence = 0.99;

/// Two-sided standard normal quantile for a confidence level. The usual
/// levels come from a table (0.90 -> 1.6448536270, 0.95 -> 1.9599639845,
/// 0.99 -> 2.5758293035, 0.999 -> 3.2905267315); others are computed.
double z_for_level(double level);

/// Wilson score interval at a given z. Zero errors gives low = 0 and all
/// errors gives high = 1.
std::pair<double, double> wilson_interval_z(std::uint64_t errors, std::uint64_t trials, double z);

/// Wilson score interval at a confidence level in (0, 1).
std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t trials, double level = kDefaultConfidence);

/// Workers used when a RunSpec asks for 0: $PSKRX_THREADS if set to a positive
/// integer, otherwise the hardware concurrency.
unsigned default_thread_count();

/// Runs `spec.trials` independent trials.
///
/// Trial t draws its transmitted symbol from the prior and then runs the
/// receiver, all from `derive_stream(master_seed, t)`. Counts are integer
/// sums, so the estimate is identical for every thread count. A failing
/// trial is rethrown as TrialError carrying the lowest failing index.
ErrorEstimate run_batch(const RunSpec& spec, double level = kDefaultConfidence);

}  // namespace pskrx

#endif  // PSKRX_MONTECARLO_HPP
