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

#include "qsms/protocol.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "oracles.h"
#include "qsms/error.h"

using namespace qsms;

namespace {

std::vector<std::uint64_t> row(const std::vector<PlayerState> &players, std::size_t dealer) {
    std::vector<std::uint64_t> out;
    for (const auto &p : players) {
        out.push_back(p.dealer_shares.at(dealer).value.value());
    }
    return out;
}

std::vector<Shadow> shadows_of(std::uint64_t d, std::vector<std::uint64_t> values) {
    std::vector<Shadow> out;
    for (std::size_t u = 0; u < values.size(); ++u) {
        out.push_back(Shadow{u + 1, FieldElement(values[u], d)});
    }
    return out;
}

RunConfig small_config(std::vector<std::uint64_t> secrets, std::size_t n, std::size_t t, std::uint64_t d) {
    RunConfig config;
    config.secrets = std::move(secrets);
    config.n = n;
    config.t = t;
    config.d = d;
    config.shots = 16;
    return config;
}

}  // namespace

TEST(protocol, deal_demo_polynomials) {
    ClassicalChannel channel;
    Rng rng(0);
    auto players = deal(demo_config(), channel, rng);
    ASSERT_EQ(players.size(), 7u);
    EXPECT_EQ(row(players, 0), (std::vector<std::uint64_t>{4, 8, 3, 0, 10, 0, 3}));
    EXPECT_EQ(row(players, 1), (std::vector<std::uint64_t>{5, 9, 4, 1, 0, 1, 4}));
    // Pinned polynomials leave the stream untouched.
    EXPECT_EQ(rng(), Rng(0)());
}

TEST(protocol, deal_constant_polynomial) {
    RunConfig config = small_config({6}, 5, 2, 7);
    config.polynomials = {{6, 0}};
    ClassicalChannel channel;
    Rng rng(0);
    for (const auto &p : deal(config, channel, rng)) {
        EXPECT_EQ(p.dealer_shares.at(0).value.value(), 6u);
    }
}

TEST(protocol, deal_random_polynomials_round_trip) {
    RunConfig config = small_config({2, 3}, 7, 3, 11);
    ClassicalChannel channel;
    Rng rng(99);
    auto players = deal(config, channel, rng);
    for (std::size_t a = 0; a < 7; ++a) {
        for (std::size_t b = a + 1; b < 7; ++b) {
            for (std::size_t c = b + 1; c < 7; ++c) {
                for (std::size_t dealer = 0; dealer < 2; ++dealer) {
                    std::vector<Share> subset{players[a].dealer_shares[dealer], players[b].dealer_shares[dealer],
                                              players[c].dealer_shares[dealer]};
                    ASSERT_EQ(reconstruct(subset, 3).value(), config.secrets[dealer]);
                }
            }
        }
    }
}

TEST(protocol, combine_local) {
    ClassicalChannel channel;
    Rng rng(0);
    auto players = deal(demo_config(), channel, rng);
    EXPECT_EQ(combine_local(players[0]).value.value(), 9u);
    EXPECT_EQ(combine_local(players[1]).value.value(), 6u);
    EXPECT_EQ(combine_local(players[4]).value.value(), 10u);
    EXPECT_TRUE(players[0].dealer_shares.empty());
    EXPECT_EQ(players[0].combined->value.value(), 9u);

    PlayerState solo{1, FieldElement(1, 5), {{FieldElement(1, 5), FieldElement(3, 5)}}, {}, {}, {}, {}};
    EXPECT_EQ(combine_local(solo).value.value(), 3u);
    EXPECT_THROW(combine_local(solo), std::invalid_argument);
}

TEST(protocol, quantum_phase_demo_shadows) {
    auto phase = run_quantum_phase(shadows_of(11, {5, 4, 7}), 11, 500, 1);
    ASSERT_EQ(phase.outcomes.size(), 500u);
    EXPECT_TRUE(phase.tap_observations.empty());
    for (const auto &o : phase.outcomes) {
        ASSERT_EQ(aggregate(o.digits, 11).value(), 5u);
    }
}

TEST(protocol, quantum_phase_single_player) {
    for (const auto &o : run_quantum_phase(shadows_of(7, {4}), 7, 50, 2).outcomes) {
        EXPECT_EQ(o.digits, (std::vector<std::uint32_t>{4}));
    }
}

TEST(protocol, quantum_phase_support_is_zero_sum_shift) {
    const auto expected = oracle::shifted_zero_sum_support(3, {1, 2});
    std::set<std::vector<std::uint32_t>> seen;
    for (const auto &o : run_quantum_phase(shadows_of(3, {1, 2}), 3, 1000, 3).outcomes) {
        ASSERT_TRUE(expected.contains(o.digits));
        seen.insert(o.digits);
        EXPECT_EQ(aggregate(o.digits, 3).value(), 0u);
    }
    EXPECT_EQ(seen, expected);
}

TEST(protocol, aggregate) {
    EXPECT_EQ(aggregate(std::vector<std::uint32_t>{0, 0, 0}, 11).value(), 0u);
    EXPECT_EQ(aggregate(std::vector<std::uint32_t>{5, 4, 7}, 11).value(), 5u);
    EXPECT_EQ(aggregate(std::vector<std::uint32_t>{1, 2}, 3).value(), 0u);
    EXPECT_THROW(aggregate(std::vector<std::uint32_t>{11}, 11), std::invalid_argument);
}

TEST(protocol, to_binary) {
    EXPECT_EQ(to_binary(5), "101");
    EXPECT_EQ(to_binary(0), "0");
    EXPECT_EQ(to_binary(16), "10000");
}

TEST(protocol, demo_run) {
    auto transcript = run_protocol(demo_config());
    ASSERT_TRUE(transcript.result.has_value());
    EXPECT_EQ(*transcript.result, 5u);
    EXPECT_EQ(to_binary(*transcript.result), "101");
    ASSERT_EQ(transcript.shot_sums.size(), 8192u);
    EXPECT_TRUE(std::all_of(transcript.shot_sums.begin(), transcript.shot_sums.end(),
                            [](std::uint64_t s) { return s == 5; }));
    ASSERT_EQ(transcript.shadows.size(), 3u);
    EXPECT_EQ(transcript.shadows[0].value.value(), 5u);
    EXPECT_EQ(transcript.shadows[1].value.value(), 4u);
    EXPECT_EQ(transcript.shadows[2].value.value(), 7u);
    std::set<MeasurementOutcome> distinct(transcript.bulletin.begin(), transcript.bulletin.end());
    EXPECT_GT(distinct.size(), 1u);
    EXPECT_LE(distinct.size(), 121u);
}

TEST(protocol, zero_secrets) {
    auto transcript = run_protocol(small_config({0, 0}, 4, 2, 5));
    EXPECT_EQ(transcript.result, std::optional<std::uint64_t>(0));
}

TEST(protocol, random_configs_sum_correctly) {
    std::mt19937_64 rng(31337);
    const std::vector<std::uint64_t> primes{3, 5, 7, 11, 13};
    for (int trial = 0; trial < 1000; ++trial) {
        RunConfig config;
        config.d = primes[rng() % primes.size()];
        config.n = 2 + rng() % (config.d - 2);
        config.t = 2 + rng() % std::min<std::uint64_t>(2, config.n - 1);
        config.allow_any_prime = true;
        config.secrets.resize(1 + rng() % 4);
        std::uint64_t expected = 0;
        for (auto &s : config.secrets) {
            s = rng() % config.d;
            expected += s;
        }
        config.shots = 4;
        config.seed = rng();
        auto transcript = run_protocol(config);
        ASSERT_EQ(transcript.result, std::optional<std::uint64_t>(expected % config.d)) << "trial " << trial;
    }
}

TEST(protocol, any_qualified_set_gives_same_result) {
    RunConfig config = demo_config();
    config.shots = 64;
    std::size_t subsets = 0;
    for (std::size_t a = 1; a <= 7; ++a) {
        for (std::size_t b = a + 1; b <= 7; ++b) {
            for (std::size_t c = b + 1; c <= 7; ++c) {
                config.qualified = {a, b, c};
                ASSERT_EQ(run_protocol(config).result, std::optional<std::uint64_t>(5));
                ++subsets;
            }
        }
    }
    EXPECT_EQ(subsets, 35u);
}

TEST(protocol, initiator_choice_does_not_change_result) {
    RunConfig config = demo_config();
    config.shots = 64;
    config.qualified = {2, 5, 7};
    for (std::size_t initiator = 0; initiator < 3; ++initiator) {
        config.initiator = initiator;
        auto transcript = run_protocol(config);
        EXPECT_EQ(transcript.result, std::optional<std::uint64_t>(5));
        for (const auto &m : transcript.messages) {
            if (m.kind == MessageKind::kQudit) {
                EXPECT_EQ(m.sender, player_name(config.qualified[initiator]));
            }
        }
    }
}

TEST(protocol, transcript_privacy_shape) {
    auto transcript = run_protocol(demo_config());
    std::size_t qudit_messages = 0;
    for (const auto &m : transcript.messages) {
        if (m.kind == MessageKind::kShare) {
            ASSERT_TRUE(m.share.has_value());
            std::size_t label = std::stoul(m.receiver.substr(1));
            EXPECT_EQ(m.share->x.value(), label);
            EXPECT_EQ(m.sender[0], 'D');
        } else {
            ++qudit_messages;
            EXPECT_FALSE(m.share.has_value());
            EXPECT_EQ(m.sender, "P1");
        }
    }
    EXPECT_EQ(qudit_messages, 2u);
    for (const auto &p : transcript.players) {
        EXPECT_TRUE(p.dealer_shares.empty());
        ASSERT_TRUE(p.combined.has_value());
        EXPECT_EQ(p.combined->x, p.x);
        if (p.shadow) {
            EXPECT_EQ(p.shadow->owner, p.label);
            EXPECT_EQ(p.measurements.size(), 8192u);
        } else {
            EXPECT_TRUE(p.measurements.empty());
            EXPECT_FALSE(p.qudit_position.has_value());
        }
    }
}

TEST(protocol, deterministic_for_fixed_seed) {
    RunConfig config = small_config({4, 9, 6}, 7, 3, 11);
    config.shots = 3000;
    config.seed = 42;
    auto a = run_protocol(config);
    auto b = run_protocol(config);
    EXPECT_EQ(a.bulletin, b.bulletin);
    EXPECT_EQ(a.histogram.counts, b.histogram.counts);
    EXPECT_EQ(a.result, std::optional<std::uint64_t>(8));
    config.seed = 43;
    EXPECT_NE(run_protocol(config).bulletin, a.bulletin);
}

TEST(protocol, config_validation) {
    auto rejects = [](RunConfig c) { EXPECT_THROW(run_protocol(c), ConfigError); };
    rejects(small_config({1}, 7, 8, 11));   // t > n
    rejects(small_config({1}, 7, 1, 11));   // t < 2
    rejects(small_config({1}, 7, 3, 9));    // composite
    rejects(small_config({1}, 7, 3, 17));   // outside [n, 2n]
    rejects(small_config({1}, 7, 3, 7));    // x_7 = 0 mod 7
    rejects(small_config({0}, 2, 2, 2));    // Z_2 has a single nonzero point
    rejects(small_config({11}, 7, 3, 11));  // secret outside Z_d
    rejects(small_config({}, 7, 3, 11));

    RunConfig wide = small_config({1}, 7, 3, 17);
    wide.allow_any_prime = true;
    EXPECT_NO_THROW(run_protocol(wide));

    RunConfig q = small_config({1}, 7, 3, 11);
    q.qualified = {1, 1, 2};
    rejects(q);
    q.qualified = {1, 2};
    rejects(q);
    q.qualified = {1, 2, 8};
    rejects(q);

    RunConfig poly = demo_config();
    poly.polynomials = {{2, 1, 1}, {4, 1, 1}};
    rejects(poly);
    poly.polynomials = {{2, 1}, {3, 1}};
    rejects(poly);
    poly.polynomials = {{2, 1, 11}, {3, 1, 1}};
    rejects(poly);

    RunConfig points = demo_config();
    points.evaluation_points = {1, 2, 3, 4, 5, 6, 6};
    rejects(points);
    points.evaluation_points = {1, 2, 3};
    rejects(points);

    RunConfig shots = demo_config();
    shots.shots = 0;
    rejects(shots);

    RunConfig init = demo_config();
    init.initiator = 3;
    rejects(init);

    RunConfig huge = small_config({1}, 10, 8, 11);
    EXPECT_THROW(run_protocol(huge), GuardError);
}

TEST(protocol, custom_evaluation_points) {
    RunConfig config = demo_config();
    config.polynomials.clear();
    config.evaluation_points = {3, 9, 1, 10, 4, 7, 2};
    config.qualified = {6, 2, 4};
    config.shots = 256;
    EXPECT_EQ(run_protocol(config).result, std::optional<std::uint64_t>(5));
}

namespace {

class CountingTap final : public ChannelTap {
   public:
    bool taps(std::size_t position) const override {
        return position == 1;
    }
    std::optional<std::uint32_t> on_transit(QuditState &, std::size_t position, Rng &) const override {
        return static_cast<std::uint32_t>(position);
    }
};

}  // namespace

TEST(protocol, passive_tap_leaves_result_intact) {
    RunConfig config = demo_config();
    config.shots = 100;
    CountingTap tap;
    auto transcript = run_protocol(config, &tap);
    EXPECT_EQ(transcript.result, std::optional<std::uint64_t>(5));
    ASSERT_EQ(transcript.tap_observations.size(), 100u);
    for (const auto &obs : transcript.tap_observations) {
        EXPECT_EQ(obs, (std::vector<std::uint32_t>{1}));
    }
}
