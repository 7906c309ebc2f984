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

#ifndef QSMS_ADVERSARY_H_
#define QSMS_ADVERSARY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsms/protocol.h"

namespace qsms {

enum class AttackKind { kIntercept, kInterceptResend, kCollusion };

std::string_view attack_kind_name(AttackKind kind);
/// Accepts "intercept", "intercept-resend", "collusion". Throws ConfigError otherwise.
AttackKind parse_attack_kind(std::string_view name);

struct Distribution {
    std::string label;
    std::vector<double> probabilities;
};

struct DistanceCheck {
    std::string first;
    std::string second;
    double tv = 0;
    double bound = 0;

    bool passed() const {
        return tv <= bound;
    }
};

struct Metric {
    std::string name;
    double value = 0;
};

/// What an adversary observed, and whether the observations are consistent
/// with learning nothing about any shadow.
struct AttackReport {
    std::string scenario;
    std::size_t shots = 0;
    std::uint64_t d = 0;
    std::vector<Distribution> distributions;
    std::vector<DistanceCheck> tv_distances;
    double guess_rate = 0;
    double baseline = 0;
    double guess_tolerance = 0;
    std::vector<Metric> metrics;
    bool pass = false;

    const Distribution *distribution(std::string_view label) const;
    std::optional<double> metric(std::string_view name) const;
};

/// Half the L1 distance. Both inputs must have the same length.
double total_variation(std::span<const double> p, std::span<const double> q);

/// ~4 sigma multinomial noise floor on the TV distance of `shots` samples over Z_d.
double tv_noise_bound(std::uint64_t d, std::size_t shots);

/// Allowed deviation of an empirical guess rate from 1/d over `shots` trials.
double guess_rate_tolerance(std::uint64_t d, std::size_t shots);

std::vector<double> empirical_distribution(std::span<const std::uint32_t> samples, std::uint64_t d);
std::vector<double> uniform_distribution(std::uint64_t d);

/// Measures the leg in flight in the computational basis and lets the
/// collapsed particle continue to its recipient.
class MeasuringTap final : public ChannelTap {
   public:
    explicit MeasuringTap(std::size_t position) : position_(position) {
    }
    bool taps(std::size_t position) const override {
        return position == position_;
    }
    std::optional<std::uint32_t> on_transit(QuditState &state, std::size_t position, Rng &rng) const override {
        return state.measure_qudit(position, rng);
    }

   private:
    std::size_t position_;
};

struct InterceptScenario {
    std::size_t n = 7;
    std::size_t t = 3;
    std::uint64_t d = 11;
    /// Each entry is one run's dealer secrets; at least two are compared.
    std::vector<std::vector<std::uint64_t>> secret_sets{{2, 3}, {7, 9}};
    /// 1-based position in the qualified set; the initiator (position 1) keeps its leg.
    std::size_t tap_position = 2;
    std::size_t probes = 100000;
    std::uint64_t seed = 0;
};

/// Each probe deals fresh random polynomials for one secret set, then the
/// adversary grabs the GHZ leg on its way to the tapped player and measures
/// it. The observed value doubles as the adversary's guess of that player's
/// shadow.
AttackReport intercept_and_measure(const InterceptScenario &scenario);

/// Exact distribution of the aggregate over Z_d, optionally with the leg at
/// 0-based `tap_position` measured in flight and resent.
std::vector<double> exact_aggregate_distribution(std::uint64_t d, std::span<const Shadow> shadows,
                                                 std::optional<std::size_t> tap_position);

/// Runs `config` honestly and again with the leg at 1-based `tap_position`
/// measured and resent, `config.shots` times each. Without a tap position the
/// second run is a control and must match the honest run exactly.
AttackReport intercept_resend(const RunConfig &config, std::optional<std::size_t> tap_position);

/// Exhaustive search for the value of one dealer's secret given everything a
/// coalition of fewer than t players sees: their dealer shares, combined
/// shares, shadows and every broadcast digit. Reports how many candidate
/// secrets stay consistent and the posterior over them.
AttackReport collusion_inference(const ProtocolTranscript &run, std::span<const std::size_t> colluders,
                                 std::size_t target_dealer = 0);

struct BroadcastInference {
    /// Shadow tuples that could have produced the broadcast.
    std::size_t consistent = 0;
    /// Posterior of each player's shadow, one distribution per position.
    std::vector<std::vector<double>> shadow_marginals;
};

/// Posterior over shadow tuples given only the broadcast digits (uniform prior).
BroadcastInference infer_shadows_from_broadcast(std::span<const std::uint32_t> broadcast, std::uint64_t d);

struct AttackScenario {
    AttackKind kind = AttackKind::kIntercept;
    /// Tap position for the intercept kinds, colluder labels for collusion.
    std::vector<std::size_t> target;
    std::size_t probe_shots = 100000;

    /// Throws ConfigError, e.g. for a coalition of t or more players.
    void validate(std::size_t t) const;
};

/// Dispatches a scenario against `base`. `compare_secrets` lists the extra
/// secret sets the intercept attack compares `base.secrets` against.
AttackReport run_attack(const AttackScenario &scenario, const RunConfig &base,
                        const std::vector<std::vector<std::uint64_t>> &compare_secrets = {{7, 9}});

}  // namespace qsms

#endif  // QSMS_ADVERSARY_H_
