// Copyright 2026 The qsms Authors
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

#include "qsms/adversary.h"

#include <cmath>

#include "gtest/gtest.h"
#include "oracles.h"
#include "qsms/error.h"

using namespace qsms;

namespace {

std::vector<Shadow> shadows_of(std::uint64_t d, std::vector<std::uint64_t> values) {
    std::vector<Shadow> out;
    for (std::size_t u = 0; u < values.size(); ++u) {
        out.push_back(Shadow{u + 1, FieldElement(values[u], d)});
    }
    return out;
}

// Aggregate distribution for two qubits, GHZ leg 1 measured and resent, built
// from explicit 4x4 matrices.
std::vector<double> two_qubit_attack_oracle(std::uint64_t m1, std::uint64_t m2, bool tapped) {
    using oracle::Complex;
    const double s = 1.0 / std::sqrt(2.0);
    auto local = [](std::uint64_t m) { return oracle::multiply(oracle::shift_matrix(2, m), oracle::dft_matrix(2, 1)); };
    const auto op = oracle::kron(local(m1), local(m2));
    std::vector<std::pair<double, std::vector<Complex>>> branches;
    if (tapped) {
        branches = {{0.5, {1, 0, 0, 0}}, {0.5, {0, 0, 0, 1}}};
    } else {
        branches = {{1.0, {s, 0, 0, s}}};
    }
    std::vector<double> dist(2, 0.0);
    for (const auto &[weight, state] : branches) {
        auto out = oracle::apply(op, state);
        for (std::size_t i = 0; i < 4; ++i) {
            dist[((i >> 1) + (i & 1)) % 2] += weight * std::norm(out[i]);
        }
    }
    return dist;
}

}  // namespace

TEST(adversary, total_variation) {
    std::vector<double> p{0.5, 0.5, 0.0}, q{0.0, 0.5, 0.5};
    EXPECT_DOUBLE_EQ(total_variation(p, q), 0.5);
    EXPECT_DOUBLE_EQ(total_variation(p, p), 0.0);
    std::vector<double> short_q{1.0};
    EXPECT_THROW(total_variation(p, short_q), std::invalid_argument);
    EXPECT_NEAR(tv_noise_bound(11, 100000), 4 * std::sqrt(11.0 / 100000), 1e-15);
}

TEST(adversary, attack_kind_names) {
    EXPECT_EQ(parse_attack_kind("intercept"), AttackKind::kIntercept);
    EXPECT_EQ(parse_attack_kind("intercept-resend"), AttackKind::kInterceptResend);
    EXPECT_EQ(parse_attack_kind("collusion"), AttackKind::kCollusion);
    EXPECT_THROW(parse_attack_kind("coherent"), ConfigError);
    EXPECT_EQ(attack_kind_name(AttackKind::kInterceptResend), "intercept-resend");
}

TEST(adversary, intercepted_ghz_leg_is_uniform) {
    InterceptScenario scenario;
    scenario.probes = 20000;
    scenario.seed = 5;
    auto report = intercept_and_measure(scenario);
    EXPECT_TRUE(report.pass);
    ASSERT_EQ(report.distributions.size(), 2u);
    for (const auto &dist : report.distributions) {
        for (double p : dist.probabilities) {
            EXPECT_NEAR(p, 1.0 / 11, 4 * std::sqrt((1.0 / 11) * (10.0 / 11) / 20000));
        }
    }
    EXPECT_EQ(report.tv_distances.size(), 3u);
    EXPECT_NEAR(report.guess_rate, 1.0 / 11, report.guess_tolerance);
    EXPECT_EQ(report.baseline, 1.0 / 11);
}

TEST(adversary, intercepted_qubit_is_a_coin) {
    const MeasuringTap tap(1);
    Rng rng(12);
    std::vector<std::uint32_t> seen;
    for (int probe = 0; probe < 10000; ++probe) {
        distribute_entanglement(2, 2, 0, &tap, rng, &seen);
    }
    ASSERT_EQ(seen.size(), 10000u);
    // Guessing a fixed shadow value of 1 from the observation.
    double rate = static_cast<double>(std::count(seen.begin(), seen.end(), 1u)) / 10000;
    EXPECT_NEAR(rate, 0.5, guess_rate_tolerance(2, 10000));
}

TEST(adversary, intercept_rejects_bad_scenarios) {
    InterceptScenario scenario;
    scenario.probes = 10;
    scenario.secret_sets = {{2, 3}};
    EXPECT_THROW(intercept_and_measure(scenario), ConfigError);
    scenario.secret_sets = {{2, 3}, {7, 9}};
    scenario.tap_position = 1;
    EXPECT_THROW(intercept_and_measure(scenario), ConfigError);
    scenario.tap_position = 4;
    EXPECT_THROW(intercept_and_measure(scenario), ConfigError);
}

TEST(adversary, exact_aggregate_distribution_matches_matrix_oracle) {
    for (std::uint64_t m1 = 0; m1 < 2; ++m1) {
        for (std::uint64_t m2 = 0; m2 < 2; ++m2) {
            auto shadows = shadows_of(2, {m1, m2});
            auto tapped = exact_aggregate_distribution(2, shadows, 1);
            auto oracle_tapped = two_qubit_attack_oracle(m1, m2, true);
            auto honest = exact_aggregate_distribution(2, shadows, std::nullopt);
            auto oracle_honest = two_qubit_attack_oracle(m1, m2, false);
            for (std::size_t k = 0; k < 2; ++k) {
                EXPECT_NEAR(tapped[k], oracle_tapped[k], 1e-12);
                EXPECT_NEAR(tapped[k], 0.5, 1e-12);
                EXPECT_NEAR(honest[k], oracle_honest[k], 1e-12);
                EXPECT_NEAR(honest[k], k == (m1 + m2) % 2 ? 1.0 : 0.0, 1e-12);
            }
        }
    }
}

TEST(adversary, intercept_resend_on_demo) {
    RunConfig config = demo_config();
    config.shots = 4096;
    auto report = intercept_resend(config, 2);
    EXPECT_TRUE(report.pass);
    EXPECT_NEAR(report.guess_rate, 1.0 / 11, report.guess_tolerance);
    EXPECT_EQ(report.metric("honest_success"), 1.0);
    const auto *exact = report.distribution("aggregate/attacked-exact");
    ASSERT_NE(exact, nullptr);
    for (double p : exact->probabilities) {
        EXPECT_NEAR(p, 1.0 / 11, 1e-9);
    }
    EXPECT_NEAR(*report.metric("disturbance"), 10.0 / 11, 1e-9);
    EXPECT_LT(*report.metric("attacked_success"), 0.2);
}

TEST(adversary, intercept_resend_control_matches_honest) {
    RunConfig config = demo_config();
    config.shots = 512;
    auto report = intercept_resend(config, std::nullopt);
    EXPECT_TRUE(report.pass);
    EXPECT_EQ(report.metric("identical_to_honest"), 1.0);
    EXPECT_EQ(report.tv_distances.at(0).tv, 0.0);
}

TEST(adversary, intercept_resend_tap_position_checked) {
    RunConfig config = demo_config();
    config.shots = 8;
    EXPECT_THROW(intercept_resend(config, 1), ConfigError);
    EXPECT_THROW(intercept_resend(config, 4), ConfigError);
    EXPECT_NO_THROW(intercept_resend(config, 3));
}

TEST(adversary, collusion_on_demo_shares) {
    RunConfig config = demo_config();
    config.shots = 1;
    auto run = run_protocol(config);
    std::vector<std::size_t> coalition{2, 3};
    auto report = collusion_inference(run, coalition);
    EXPECT_TRUE(report.pass);
    EXPECT_EQ(report.metric("candidates"), 11.0);
    EXPECT_EQ(report.metric("revealed_sum"), 5.0);
    for (double p : report.distributions.at(0).probabilities) {
        EXPECT_NEAR(p, 1.0 / 11, 1e-12);
    }
    // Oracle: secrets consistent with the coalition's f-shares alone.
    auto oracle_set = oracle::consistent_secrets({{2, 8}, {3, 3}}, 3, 11);
    EXPECT_EQ(oracle_set.size(), 11u);

    std::vector<std::size_t> full{1, 2, 3};
    try {
        collusion_inference(run, full);
        FAIL();
    } catch (const ConfigError &e) {
        EXPECT_STREQ(e.what(), "threshold reached; reconstruction is legitimate");
    }
}

TEST(adversary, collusion_single_colluder_small_field) {
    RunConfig config;
    config.secrets = {1, 4};
    config.n = 4;
    config.t = 2;
    config.d = 5;
    config.seed = 77;
    auto run = run_protocol(config);
    for (std::size_t label = 1; label <= 4; ++label) {
        std::vector<std::size_t> coalition{label};
        auto report = collusion_inference(run, coalition, 1);
        EXPECT_TRUE(report.pass);
        EXPECT_EQ(report.metric("candidates"), 5.0);
    }
}

TEST(adversary, collusion_rejects_bad_coalitions) {
    RunConfig config = demo_config();
    config.shots = 1;
    auto run = run_protocol(config);
    std::vector<std::size_t> empty, dup{2, 2}, outside{9};
    EXPECT_THROW(collusion_inference(run, empty), ConfigError);
    EXPECT_THROW(collusion_inference(run, dup), ConfigError);
    EXPECT_THROW(collusion_inference(run, outside), ConfigError);

    config.secrets = {2};
    config.polynomials = {{2, 1, 1}};
    auto single = run_protocol(config);
    std::vector<std::size_t> two{2, 3};
    EXPECT_THROW(collusion_inference(single, two), ConfigError);
}

TEST(adversary, broadcast_leaves_shadows_uniform) {
    std::vector<std::uint32_t> broadcast{3, 10, 3};  // digit sum 16 = 5 mod 11
    auto inference = infer_shadows_from_broadcast(broadcast, 11);
    EXPECT_EQ(inference.consistent, 121u);
    for (const auto &marginal : inference.shadow_marginals) {
        for (double p : marginal) {
            EXPECT_NEAR(p, 1.0 / 11, 1e-12);
        }
    }
    std::vector<std::uint32_t> too_big{0, 0, 0, 0};
    EXPECT_THROW(infer_shadows_from_broadcast(too_big, 11), GuardError);
}

TEST(adversary, post_transform_marginals_are_uniform) {
    for (auto [d, shadows] : std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>>{
             {11, {5, 4, 7}}, {3, {1, 2}}, {5, {0, 3, 1}}}) {
        auto state = analytic_post_transform_state(d, shadows);
        for (std::size_t u = 0; u < shadows.size(); ++u) {
            for (double p : state.marginal(u)) {
                EXPECT_NEAR(p, 1.0 / static_cast<double>(d), 1e-12);
            }
        }
    }
    auto run = run_protocol(demo_config());
    for (std::size_t u = 0; u < 3; ++u) {
        auto dist = empirical_distribution(run.players[u].measurements, 11);
        EXPECT_LE(total_variation(dist, uniform_distribution(11)), tv_noise_bound(11, 8192));
    }
}

TEST(adversary, scenario_validation_and_dispatch) {
    AttackScenario collusion{AttackKind::kCollusion, {1, 2, 3}, 1};
    EXPECT_THROW(collusion.validate(3), ConfigError);
    EXPECT_THROW(run_attack(collusion, demo_config()), ConfigError);
    collusion.target = {2, 3};
    EXPECT_TRUE(run_attack(collusion, demo_config()).pass);

    AttackScenario intercept{AttackKind::kIntercept, {}, 5000};
    auto report = run_attack(intercept, demo_config());
    EXPECT_EQ(report.scenario, "intercept");
    EXPECT_EQ(report.distributions.size(), 2u);

    AttackScenario resend{AttackKind::kInterceptResend, {0}, 256};
    EXPECT_EQ(run_attack(resend, demo_config()).metric("identical_to_honest"), 1.0);

    AttackScenario many{AttackKind::kIntercept, {2, 3}, 10};
    EXPECT_THROW(many.validate(3), ConfigError);
    AttackScenario none{AttackKind::kIntercept, {}, 0};
    EXPECT_THROW(none.validate(3), ConfigError);
}
