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
#include <numeric>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "pskrx/errors.hpp"

using namespace pskrx;

namespace {

double total(const PosteriorState& s) { return std::accumulate(s.probs().begin(), s.probs().end(), 0.0); }

std::vector<double> random_likelihoods(std::mt19937_64& gen, int m) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> l(static_cast<std::size_t>(m));
    for (auto& x : l) {
        x = u(gen);
    }
    l[0] += 1e-3;  // keep at least one product positive
    return l;
}

}  // namespace

TEST(bayesian_engine, initial_prior_examples) {
    const auto uniform = initial_prior(4);
    for (int m = 0; m < 4; ++m) {
        EXPECT_EQ(uniform[m], 0.25);
    }
    const std::vector<double> p{0.7, 0.3};
    const auto pass = initial_prior(2, std::span<const double>(p));
    EXPECT_DOUBLE_EQ(pass[0], 0.7);
    EXPECT_DOUBLE_EQ(pass[1], 0.3);
    const std::vector<double> raw{2.0, 2.0};
    const auto norm = initial_prior(2, std::span<const double>(raw));
    EXPECT_EQ(norm[0], 0.5);
    EXPECT_EQ(norm[1], 0.5);
}

TEST(bayesian_engine, initial_prior_rejects_bad_input) {
    const std::vector<double> negative{0.5, -0.1, 0.6};
    EXPECT_THROW(initial_prior(3, std::span<const double>(negative)), DomainError);
    const std::vector<double> zeros{0.0, 0.0};
    EXPECT_THROW(initial_prior(2, std::span<const double>(zeros)), DomainError);
    const std::vector<double> short_prior{1.0};
    EXPECT_THROW(initial_prior(2, std::span<const double>(short_prior)), DomainError);
}

TEST(bayesian_engine, update_examples) {
    const auto uniform = initial_prior(4);
    const std::vector<double> flat(4, 0.3);
    const auto same = update(uniform, flat);
    for (int m = 0; m < 4; ++m) {
        EXPECT_DOUBLE_EQ(same[m], 0.25);
    }

    const std::vector<double> l{0.8, 0.2};
    const auto post = update(initial_prior(2), l);
    EXPECT_DOUBLE_EQ(post[0], 0.8);
    EXPECT_DOUBLE_EQ(post[1], 0.2);

    const PosteriorState certain(std::vector<double>{1.0, 0.0});
    const std::vector<double> any{0.1, 0.9};
    const auto kept = update(certain, any);
    EXPECT_EQ(kept[0], 1.0);
    EXPECT_EQ(kept[1], 0.0);
}

TEST(bayesian_engine, degenerate_evidence_raises) {
    const PosteriorState certain(std::vector<double>{1.0, 0.0});
    const std::vector<double> impossible{0.0, 0.7};
    EXPECT_THROW(update(certain, impossible), DegenerateEvidenceError);
    const std::vector<double> zeros{0.0, 0.0};
    EXPECT_THROW(update(initial_prior(2), zeros), DegenerateEvidenceError);
    const double inf = std::numeric_limits<double>::infinity();
    const std::vector<double> log_zero{-inf, -inf};
    EXPECT_THROW(update_log(initial_prior(2), log_zero), DegenerateEvidenceError);
}

TEST(bayesian_engine, map_tie_break) {
    EXPECT_EQ(map_hypothesis(PosteriorState(std::vector<double>{0.1, 0.7, 0.1, 0.1})), 1);
    EXPECT_EQ(map_hypothesis(PosteriorState(std::vector<double>{0.5, 0.5})), 0);
    EXPECT_EQ(map_hypothesis(initial_prior(4)), 0);
    // Rounding-level differences count as ties.
    EXPECT_EQ(map_hypothesis(std::vector<double>{0.3, 0.35, 0.35 * (1 + 1e-14)}), 1);
    EXPECT_EQ(map_hypothesis(std::vector<double>{0.3, 0.35, 0.35 * (1 + 1e-6)}), 2);
}

TEST(bayesian_engine, tiny_likelihoods_use_log_domain) {
    const std::vector<double> l{1e-300, 1e-301, 5e-300};
    const auto post = update(initial_prior(3), l);
    EXPECT_NEAR(post[0], 10.0 / 61.0, 1e-13);
    EXPECT_NEAR(post[1], 1.0 / 61.0, 1e-13);
    EXPECT_NEAR(post[2], 50.0 / 61.0, 1e-13);
    EXPECT_NEAR(total(post), 1.0, 1e-12);

    // prior * likelihood underflows for symbol 0 (1e-350) even though each
    // factor is representable; the posterior 1e-350 / 1e-300 is not.
    const PosteriorState skewed(std::vector<double>{1e-200, 1.0 - 1e-200, 0.0});
    const std::vector<double> l2{1e-150, 1e-300, 1.0};
    const auto post2 = update(skewed, l2);
    EXPECT_NEAR(post2[0], 1e-50, 1e-60);
    EXPECT_NEAR(post2[1], 1.0, 1e-12);
    EXPECT_EQ(post2[2], 0.0);
}

TEST(bayesian_engine, normalization_and_scale_invariance) {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> scale_dist(-200.0, 200.0);
    for (int trial = 0; trial < 300; ++trial) {
        const int m = 2 + trial % 15;
        auto state = initial_prior(m);
        for (int step = 0; step < 20; ++step) {
            const auto l = random_likelihoods(gen, m);
            const auto next = update(state, l);
            EXPECT_NEAR(total(next), 1.0, 1e-12);
            for (double p : next.probs()) {
                EXPECT_GE(p, 0.0);
                EXPECT_LE(p, 1.0);
            }

            const double scale = std::pow(10.0, scale_dist(gen) / 2.0);
            std::vector<double> scaled(l);
            for (auto& x : scaled) {
                x *= scale;
            }
            const auto scaled_next = update(state, scaled);
            for (int k = 0; k < m; ++k) {
                EXPECT_NEAR(scaled_next[k], next[k], 1e-12);
            }
            EXPECT_EQ(map_hypothesis(scaled_next), map_hypothesis(next));
            state = next;
        }
    }
}

TEST(bayesian_engine, uninformative_update_is_identity) {
    const PosteriorState s(std::vector<double>{0.1, 0.2, 0.3, 0.4});
    for (double c : {1e-5, 0.5, 1.0, 3.0}) {
        const auto next = update(s, std::vector<double>(4, c));
        for (int k = 0; k < 4; ++k) {
            EXPECT_NEAR(next[k], s[k], 1e-15);
        }
    }
}

TEST(bayesian_engine, sequential_equals_product) {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 500; ++trial) {
        const int m = 2 + trial % 9;
        const auto prior = initial_prior(m);
        const auto l1 = random_likelihoods(gen, m);
        const auto l2 = random_likelihoods(gen, m);
        std::vector<double> joint(static_cast<std::size_t>(m));
        for (std::size_t k = 0; k < joint.size(); ++k) {
            joint[k] = l1[k] * l2[k];
        }
        const auto two_step = update(update(prior, l1), l2);
        const auto one_step = update(prior, joint);
        for (int k = 0; k < m; ++k) {
            EXPECT_NEAR(two_step[k], one_step[k], 1e-10 * std::max(one_step[k], 1e-300));
        }
    }
}

TEST(bayesian_engine, log_update_matches_linear) {
    const std::vector<double> l{0.2, 0.05, 0.6, 0.15};
    std::vector<double> logs;
    for (double x : l) {
        logs.push_back(std::log(x));
    }
    const PosteriorState s(std::vector<double>{0.4, 0.3, 0.2, 0.1});
    const auto a = update(s, l);
    const auto b = update_log(s, logs);
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(a[k], b[k], 1e-15);
    }
}
