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

#include "pskrx/sweep.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "pskrx/bounds.hpp"
#include "pskrx/errors.hpp"

using namespace pskrx;

TEST(sweep, photon_grids) {
    const auto g = default_photon_grid();
    ASSERT_EQ(g.size(), 20u);
    EXPECT_DOUBLE_EQ(g.front(), 0.05);
    EXPECT_DOUBLE_EQ(g.back(), 50.0);
    for (std::size_t k = 2; k < g.size(); ++k) {
        EXPECT_NEAR(g[k] / g[k - 1], g[1] / g[0], 1e-12);
    }
    const auto lin = make_photon_grid(0.0, 2.0, 5, GridScale::Linear);
    EXPECT_EQ(lin, (std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0}));
    EXPECT_EQ(make_photon_grid(3.0, 3.0, 1, GridScale::Geometric), std::vector<double>{3.0});
    EXPECT_THROW(make_photon_grid(0.0, 1.0, 4, GridScale::Geometric), ConfigError);
    EXPECT_THROW(make_photon_grid(2.0, 1.0, 4, GridScale::Linear), ConfigError);
    EXPECT_THROW(make_photon_grid(0.1, 1.0, 0, GridScale::Linear), ConfigError);
}

TEST(sweep, single_blind_point) {
    SweepSpec spec;
    spec.photon_grid = {0.0};
    spec.trials = 10'000;
    const auto rows = run_sweep(spec);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].curve_label, "onoff");
    EXPECT_EQ(rows[0].mean_photon, 0.0);
    EXPECT_NEAR(rows[0].helstrom, 0.75, 1e-12);
    EXPECT_NEAR(rows[0].sql, 0.75, 1e-12);
    EXPECT_LE(rows[0].ci_low, 0.75);
    EXPECT_GE(rows[0].ci_high, 0.75);
}

TEST(sweep, vary_axis_labels_and_order) {
    SweepSpec spec;
    spec.photon_grid = {0.5, 1.0, 2.0};
    spec.vary = VaryAxis{"eta", {"1.0", "0.8"}};
    spec.trials = 20'000;
    const auto rows = run_sweep(spec);
    ASSERT_EQ(rows.size(), 6u);
    for (int k = 0; k < 3; ++k) {
        EXPECT_EQ(rows[static_cast<std::size_t>(k)].curve_label, "eta=0.8");
        EXPECT_EQ(rows[static_cast<std::size_t>(k + 3)].curve_label, "eta=1");
        EXPECT_EQ(rows[static_cast<std::size_t>(k)].mean_photon, spec.photon_grid[static_cast<std::size_t>(k)]);
    }
    for (const auto& r : rows) {
        const auto b = bound_point(4, r.mean_photon);
        EXPECT_EQ(r.helstrom, b.helstrom);
        EXPECT_EQ(r.sql, b.sql);
        EXPECT_LE(r.ci_low, r.p_err);
        EXPECT_GE(r.ci_high, r.p_err);
    }
}

TEST(sweep, exact_cells) {
    SweepSpec spec;
    spec.base.n_partitions = 3;
    spec.photon_grid = {0.5, 1.0};
    spec.exact = true;
    const auto rows = run_sweep(spec);
    ASSERT_EQ(rows.size(), 2u);
    for (const auto& r : rows) {
        ReceiverConfig cfg = spec.base;
        cfg.constellation = Constellation::from_mean_photon(4, r.mean_photon);
        EXPECT_NEAR(r.p_err, exact_error_probability(cfg).p_error, 1e-15);
        EXPECT_EQ(r.ci_low, r.p_err);
    }
}

TEST(sweep, results_depend_only_on_spec) {
    SweepSpec spec = preset("fig2e");
    spec.photon_grid = {1.0, 3.0};
    spec.trials = 30'000;
    spec.master_seed = 99;
    spec.threads = 1;
    const auto a = run_sweep(spec);
    spec.threads = 4;
    EXPECT_EQ(run_sweep(spec), a);
    spec.master_seed = 100;
    EXPECT_NE(run_sweep(spec), a);
}

TEST(sweep, presets) {
    const auto f2 = preset("fig2e");
    EXPECT_EQ(f2.base.m_ary(), 4);
    EXPECT_EQ(f2.base.n_partitions, 10);
    EXPECT_EQ(f2.base.device, (DeviceParams{0.723, 2.7e-5, 0.99, 0.995}));
    ASSERT_TRUE(f2.vary.has_value());
    EXPECT_EQ(f2.vary->name, "detector");
    EXPECT_EQ(f2.vary->values, (std::vector<std::string>{"onoff", "pnrd"}));
    EXPECT_EQ(f2.photon_grid, default_photon_grid());
    EXPECT_EQ(preset("fig3e").base.m_ary(), 8);
    EXPECT_THROW(preset("fig9"), ConfigError);
}

TEST(sweep, apply_parameter_and_validation) {
    ReceiverConfig cfg;
    apply_parameter(cfg, "eta", "0.5");
    apply_parameter(cfg, "nu", "1e-3");
    apply_parameter(cfg, "tau", "0.9");
    apply_parameter(cfg, "xi", "0.95");
    apply_parameter(cfg, "detector", "pnrd");
    EXPECT_EQ(cfg.device, (DeviceParams{0.5, 1e-3, 0.9, 0.95}));
    EXPECT_EQ(cfg.detector, DetectorKind::PNRD);
    EXPECT_THROW(apply_parameter(cfg, "gamma", "1"), ConfigError);
    EXPECT_THROW(apply_parameter(cfg, "eta", "abc"), ConfigError);
    EXPECT_THROW(apply_parameter(cfg, "detector", "apd"), ConfigError);

    SweepSpec spec;
    spec.photon_grid = {1.0};
    spec.vary = VaryAxis{"eta", {"1.5"}};
    EXPECT_THROW(validate_sweep(spec), ConfigError);
    spec.vary.reset();
    spec.photon_grid = {2.0, 1.0};
    EXPECT_THROW(validate_sweep(spec), ConfigError);
    spec.photon_grid = {};
    EXPECT_THROW(validate_sweep(spec), ConfigError);
    spec.photon_grid = {1.0};
    spec.trials = 0;
    EXPECT_THROW(validate_sweep(spec), ConfigError);
}
