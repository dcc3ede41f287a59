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

#include "pskrx/receiver_sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "pskrx/errors.hpp"

namespace pskrx {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Scratch buffer that stays on the stack for the constellation sizes the
// receiver is normally run with.
class Scratch {
  public:
    explicit Scratch(std::size_t n) : size_(n) {
        if (n > inline_.size()) {
            heap_.resize(n);
        }
    }
    std::span<double> view() {
        return heap_.empty() ? std::span<double>(inline_.data(), size_) : std::span<double>(heap_);
    }

  private:
    std::array<double, 32> inline_{};
    std::vector<double> heap_;
    std::size_t size_;
};

}  // namespace

void ReceiverConfig::validate() const {
    if (n_partitions < 1) {
        throw DomainError("partition count must be >= 1, got " + std::to_string(n_partitions));
    }
    if (pnrd_count_cutoff < 0) {
        throw DomainError("PNRD count cutoff must be >= 1 (or 0 for automatic)");
    }
    device.validate();
    if (inference_device) {
        inference_device->validate();
    }
    if (priors) {
        initial_prior(m_ary(), std::span<const double>(*priors));
    }
}

ReceiverModel::ReceiverModel(const ReceiverConfig& cfg) : cfg_(cfg), m_ary_(cfg.m_ary()) {
    cfg_.validate();
    const auto prior = cfg_.priors ? initial_prior(m_ary_, std::span<const double>(*cfg_.priors))
                                   : initial_prior(m_ary_);
    priors_.assign(prior.probs().begin(), prior.probs().end());

    const auto cells = static_cast<std::size_t>(m_ary_) * static_cast<std::size_t>(m_ary_);
    intensity_.resize(cells);
    phys_mean_.resize(cells);
    phys_off_.resize(cells);
    belief_mean_.resize(cells);
    belief_log_mean_.resize(cells);
    belief_off_.resize(cells);
    belief_on_.resize(cells);

    const DeviceParams& phys = cfg_.device;
    const DeviceParams& belief = cfg_.belief();
    for (SymbolIndex h = 0; h < m_ary_; ++h) {
        const ComplexAmplitude phys_field = local_field(cfg_.constellation, h, cfg_.n_partitions, phys.tau);
        const ComplexAmplitude belief_field = local_field(cfg_.constellation, h, cfg_.n_partitions, belief.tau);
        for (SymbolIndex l = 0; l < m_ary_; ++l) {
            const ComplexAmplitude signal = partition(cfg_.constellation, l, cfg_.n_partitions).per_duration_amplitude;
            const std::size_t k = index(h, l);
            intensity_[k] = displaced_intensity(signal, phys_field, phys);
            phys_mean_[k] = detector_mean(intensity_[k], phys);
            phys_off_[k] = std::exp(-phys_mean_[k]);

            const double belief_intensity = displaced_intensity(signal, belief_field, belief);
            belief_mean_[k] = detector_mean(belief_intensity, belief);
            belief_log_mean_[k] = belief_mean_[k] > 0.0 ? std::log(belief_mean_[k]) : kNegInf;
            belief_off_[k] = std::exp(-belief_mean_[k]);
            belief_on_[k] = 1.0 - belief_off_[k];
            max_mean_ = std::max({max_mean_, phys_mean_[k], belief_mean_[k]});
        }
    }
}

double ReceiverModel::physical_likelihood(SymbolIndex hypothesis, SymbolIndex signal, DetectionOutcome outcome) const {
    const std::size_t k = index(hypothesis, signal);
    if (cfg_.detector == DetectorKind::OnOff) {
        return outcome.clicked() ? 1.0 - phys_off_[k] : phys_off_[k];
    }
    return pnrd_likelihood(intensity_[k], outcome.count, cfg_.device);
}

void ReceiverModel::update_posterior(std::span<double> probs, SymbolIndex hypothesis, DetectionOutcome outcome) const {
    const std::size_t row = index(hypothesis, 0);
    const auto m = static_cast<std::size_t>(m_ary_);
    if (cfg_.detector == DetectorKind::OnOff) {
        const double* table = outcome.clicked() ? &belief_on_[row] : &belief_off_[row];
        update_in_place(probs, std::span<const double>(table, m));
        return;
    }
    // Poisson log-likelihood without the -log(n!) term, which is common to
    // every hypothesis and cancels on normalization.
    Scratch logs(m);
    auto view = logs.view();
    const int n = outcome.count;
    for (std::size_t l = 0; l < m; ++l) {
        const double mean = belief_mean_[row + l];
        if (n == 0) {
            view[l] = -mean;
        } else {
            view[l] = mean > 0.0 ? -mean + n * belief_log_mean_[row + l] : kNegInf;
        }
    }
    update_log_in_place(probs, view);
}

SymbolIndex ReceiverModel::run(SymbolIndex transmitted, RandomStream& rng, TrialRecord* record) const {
    if (transmitted < 0 || transmitted >= m_ary_) {
        throw IndexError("transmitted symbol " + std::to_string(transmitted) + " outside [0, " +
                         std::to_string(m_ary_) + ")");
    }
    const auto m = static_cast<std::size_t>(m_ary_);
    Scratch posterior_buffer(m);
    auto posterior = posterior_buffer.view();
    std::copy(priors_.begin(), priors_.end(), posterior.begin());

    if (record) {
        record->transmitted = transmitted;
        record->outcomes.clear();
        record->hypotheses.clear();
        record->outcomes.reserve(static_cast<std::size_t>(cfg_.n_partitions));
        record->hypotheses.reserve(static_cast<std::size_t>(cfg_.n_partitions));
    }

    SymbolIndex hypothesis = 0;
    for (int j = 0; j < cfg_.n_partitions; ++j) {
        if (j > 0) {
            hypothesis = map_hypothesis(posterior);
        }
        const std::size_t k = index(hypothesis, transmitted);
        DetectionOutcome outcome;
        if (cfg_.detector == DetectorKind::OnOff) {
            // Same draw as sample_outcome, with the off probability cached.
            if (phys_mean_[k] > 0.0) {
                outcome.count = rng.uniform() < 1.0 - phys_off_[k] ? 1 : 0;
            }
        } else {
            outcome.count = sample_poisson(phys_mean_[k], rng);
        }
        update_posterior(posterior, hypothesis, outcome);
        if (record) {
            record->outcomes.push_back(outcome);
            record->hypotheses.push_back(hypothesis);
        }
    }
    const SymbolIndex decided = map_hypothesis(posterior);
    if (record) {
        record->decided = decided;
        record->correct = decided == transmitted;
    }
    return decided;
}

TrialRecord run_trial(const ReceiverConfig& cfg, SymbolIndex transmitted, RandomStream& rng) {
    const ReceiverModel model(cfg);
    TrialRecord record;
    model.run(transmitted, rng, &record);
    return record;
}

int exact_count_cutoff(const ReceiverModel& model) {
    const ReceiverConfig& cfg = model.config();
    if (cfg.detector == DetectorKind::OnOff) {
        return 1;
    }
    if (cfg.pnrd_count_cutoff > 0) {
        return cfg.pnrd_count_cutoff;
    }
    const double mean = model.max_mean();
    return static_cast<int>(std::ceil(mean + 10.0 * std::sqrt(mean) + 10.0));
}

namespace {

double branch_count_for(int cutoff, int n_partitions) {
    return std::pow(static_cast<double>(cutoff) + 1.0, static_cast<double>(n_partitions));
}

// Depth-first walk over every outcome sequence. The receiver's choices
// depend only on the outcomes, so one walk carries the path probability of
// all M transmitted symbols at once.
class Enumerator {
  public:
    Enumerator(const ReceiverModel& model, int cutoff)
        : model_(model),
          m_(static_cast<std::size_t>(model.m_ary())),
          cutoff_(cutoff),
          pnrd_(model.config().detector == DetectorKind::PNRD),
          levels_(static_cast<std::size_t>(model.n_partitions()) + 1),
          error_(m_, 0.0),
          residual_(m_, 0.0) {
        for (auto& level : levels_) {
            level.path.resize(m_);
            level.posterior.resize(m_);
            level.outcome_probs.resize(m_ * (static_cast<std::size_t>(cutoff_) + 1));
        }
    }

    void run() {
        auto& root = levels_[0];
        std::fill(root.path.begin(), root.path.end(), 1.0);
        std::copy(model_.priors().begin(), model_.priors().end(), root.posterior.begin());
        visit(0);
    }

    const std::vector<double>& conditional_error() const { return error_; }
    const std::vector<double>& conditional_residual() const { return residual_; }

  private:
    struct Level {
        std::vector<double> path;
        std::vector<double> posterior;
        std::vector<double> outcome_probs;
    };

    void visit(int depth) {
        Level& here = levels_[static_cast<std::size_t>(depth)];
        if (depth == model_.n_partitions()) {
            const SymbolIndex decided = map_hypothesis(here.posterior);
            for (std::size_t m = 0; m < m_; ++m) {
                if (static_cast<SymbolIndex>(m) != decided) {
                    error_[m] += here.path[m];
                }
            }
            return;
        }
        const SymbolIndex hypothesis = depth == 0 ? 0 : map_hypothesis(here.posterior);
        const int outcomes = cutoff_ + 1;

        // Per-symbol outcome probabilities at this node, indexed [m][n].
        std::vector<double>& probs = here.outcome_probs;
        for (std::size_t m = 0; m < m_; ++m) {
            const auto sym = static_cast<SymbolIndex>(m);
            if (!pnrd_) {
                probs[m * 2] = model_.physical_likelihood(hypothesis, sym, {0});
                probs[m * 2 + 1] = model_.physical_likelihood(hypothesis, sym, {1});
                continue;
            }
            const double mean = model_.physical_mean(hypothesis, sym);
            double term = std::exp(-mean);
            for (int n = 0; n < outcomes; ++n) {
                if (n > 0) {
                    term *= mean / n;
                }
                probs[m * static_cast<std::size_t>(outcomes) + static_cast<std::size_t>(n)] = term;
            }
            residual_[m] += here.path[m] * poisson_tail(mean, cutoff_, term);
        }

        Level& next = levels_[static_cast<std::size_t>(depth) + 1];
        for (int n = 0; n < outcomes; ++n) {
            bool reachable = false;
            for (std::size_t m = 0; m < m_; ++m) {
                next.path[m] = here.path[m] * probs[m * static_cast<std::size_t>(outcomes) + static_cast<std::size_t>(n)];
                reachable = reachable || next.path[m] > 0.0;
            }
            if (!reachable) {
                continue;
            }
            std::copy(here.posterior.begin(), here.posterior.end(), next.posterior.begin());
            model_.update_posterior(next.posterior, hypothesis, DetectionOutcome{n});
            visit(depth + 1);
        }
    }

    // P(count > cutoff) for a Poisson mean, summed term by term from the
    // probability at `cutoff` so the result keeps full relative precision.
    static double poisson_tail(double mean, int cutoff, double term_at_cutoff) {
        if (mean <= 0.0) {
            return 0.0;
        }
        double tail = 0.0;
        double term = term_at_cutoff;
        for (int n = cutoff + 1; n < cutoff + 100000; ++n) {
            term *= mean / n;
            tail += term;
            if (term < tail * 1e-17 || term == 0.0) {
                break;
            }
        }
        return tail;
    }

    const ReceiverModel& model_;
    std::size_t m_;
    int cutoff_;
    bool pnrd_;
    std::vector<Level> levels_;
    std::vector<double> error_;
    std::vector<double> residual_;
};

}  // namespace

double exact_branch_count(const ReceiverConfig& cfg) {
    const ReceiverModel model(cfg);
    return branch_count_for(exact_count_cutoff(model), cfg.n_partitions);
}

ExactResult exact_error_probability(const ReceiverConfig& cfg, double max_branches) {
    const ReceiverModel model(cfg);
    ExactResult result;
    result.count_cutoff = exact_count_cutoff(model);
    result.branch_count = branch_count_for(result.count_cutoff, cfg.n_partitions);
    if (result.branch_count > max_branches) {
        throw EnumerationTooLargeError(result.branch_count, max_branches);
    }

    Enumerator walk(model, result.count_cutoff);
    walk.run();
    result.conditional_error = walk.conditional_error();
    result.conditional_residual = walk.conditional_residual();
    for (std::size_t m = 0; m < result.conditional_error.size(); ++m) {
        result.p_error += model.priors()[m] * result.conditional_error[m];
        result.residual_mass += model.priors()[m] * result.conditional_residual[m];
    }
    return result;
}

}  // namespace pskrx
