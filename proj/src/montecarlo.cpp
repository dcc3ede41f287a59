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

#include "pskrx/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/special_functions/erf.hpp>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string_view>
#include <thread>

#include "pskrx/errors.hpp"

namespace pskrx {

namespace {

constexpr std::uint64_t kChunk = 4096;

struct Tally {
    std::vector<std::uint64_t> sent;
    std::vector<std::uint64_t> missed;
};

// Inverse-CDF draw from a prior; a uniform prior uses the exact integer draw.
class SymbolSource {
  public:
    explicit SymbolSource(std::span<const double> priors) : m_(priors.size()) {
        uniform_ = std::all_of(priors.begin(), priors.end(), [&](double p) { return p == priors[0]; });
        double acc = 0.0;
        for (double p : priors) {
            acc += p;
            cdf_.push_back(acc);
        }
    }

    SymbolIndex draw(RandomStream& rng) const {
        if (uniform_) {
            return static_cast<SymbolIndex>(rng.below(m_));
        }
        const double u = rng.uniform() * cdf_.back();
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        return static_cast<SymbolIndex>(std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), m_ - 1));
    }

  private:
    std::size_t m_;
    bool uniform_ = true;
    std::vector<double> cdf_;
};

}  // namespace

double z_for_level(double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw DomainError("confidence level must lie in (0, 1)");
    }
    struct Entry {
        double level;
        double z;
    };
    static constexpr Entry kTable[] = {
        {0.90, 1.6448536270}, {0.95, 1.9599639845}, {0.99, 2.5758293035}, {0.999, 3.2905267315}};
    for (const auto& e : kTable) {
        if (level == e.level) {
            return e.z;
        }
    }
    return std::sqrt(2.0) * boost::math::erf_inv(level);
}

std::pair<double, double> wilson_interval_z(std::uint64_t errors, std::uint64_t trials, double z) {
    if (trials == 0 || errors > trials) {
        throw DomainError("Wilson interval needs 0 <= errors <= trials and trials > 0");
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    double low = errors == 0 ? 0.0 : std::clamp(center - half, 0.0, p);
    double high = errors == trials ? 1.0 : std::clamp(center + half, p, 1.0);
    return {low, high};
}

std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t trials, double level) {
    return wilson_interval_z(errors, trials, z_for_level(level));
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("PSKRX_THREADS")) {
        const std::string_view text(env);
        unsigned value = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc() && ptr == text.data() + text.size() && value > 0) {
            return value;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ErrorEstimate run_batch(const RunSpec& spec, double level) {
    if (spec.trials < 1) {
        throw DomainError("a batch needs at least one trial");
    }
    const ReceiverModel model(spec.cfg);
    const SymbolSource source(model.priors());
    const auto m = static_cast<std::size_t>(model.m_ary());
    const std::uint64_t chunks = (spec.trials + kChunk - 1) / kChunk;
    const unsigned workers = static_cast<unsigned>(
        std::min<std::uint64_t>(spec.threads == 0 ? default_thread_count() : spec.threads, chunks));

    std::atomic<std::uint64_t> next_chunk{0};
    std::atomic<std::uint64_t> first_failure{std::numeric_limits<std::uint64_t>::max()};
    std::mutex failure_mutex;
    std::string failure_what;
    std::vector<Tally> tallies(workers, Tally{std::vector<std::uint64_t>(m, 0), std::vector<std::uint64_t>(m, 0)});

    auto work = [&](unsigned id) {
        Tally& tally = tallies[id];
        for (;;) {
            const std::uint64_t chunk = next_chunk.fetch_add(1, std::memory_order_relaxed);
            const std::uint64_t begin = chunk * kChunk;
            // Chunks are handed out in increasing order, so nothing past a
            // known failure can lower the reported index.
            if (chunk >= chunks || begin > first_failure.load(std::memory_order_relaxed)) {
                return;
            }
            const std::uint64_t end = std::min(spec.trials, begin + kChunk);
            for (std::uint64_t t = begin; t < end; ++t) {
                try {
                    RandomStream rng = derive_stream(spec.master_seed, t);
                    const SymbolIndex sent = source.draw(rng);
                    const SymbolIndex decided = model.run(sent, rng);
                    ++tally.sent[static_cast<std::size_t>(sent)];
                    tally.missed[static_cast<std::size_t>(sent)] += decided != sent ? 1 : 0;
                } catch (const std::exception& e) {
                    std::lock_guard lock(failure_mutex);
                    if (t < first_failure.load()) {
                        first_failure.store(t);
                        failure_what = e.what();
                    }
                    return;
                }
            }
        }
    };

    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned id = 0; id < workers; ++id) {
            pool.emplace_back(work, id);
        }
    }

    if (first_failure.load() != std::numeric_limits<std::uint64_t>::max()) {
        throw TrialError(first_failure.load(), failure_what);
    }

    ErrorEstimate estimate;
    estimate.trials = spec.trials;
    estimate.ci_level = level;
    estimate.sent_per_symbol.assign(m, 0);
    estimate.errors_per_symbol.assign(m, 0);
    for (const auto& tally : tallies) {
        for (std::size_t s = 0; s < m; ++s) {
            estimate.sent_per_symbol[s] += tally.sent[s];
            estimate.errors_per_symbol[s] += tally.missed[s];
        }
    }
    for (auto e : estimate.errors_per_symbol) {
        estimate.errors += e;
    }
    estimate.p_hat = static_cast<double>(estimate.errors) / static_cast<double>(estimate.trials);
    std::tie(estimate.ci_low, estimate.ci_high) = wilson_interval(estimate.errors, estimate.trials, level);
    return estimate;
}

}  // namespace pskrx
