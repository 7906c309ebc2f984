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
#include <set>
#include <stdexcept>

#include "parallel.h"
#include "qsms/error.h"

namespace qsms {

namespace {

[[noreturn]] void config_error(const std::string &what) {
    throw ConfigError("invalid run config: " + what);
}

}  // namespace

void RunConfig::validate() const {
    if (!is_prime(d)) {
        config_error("d=" + std::to_string(d) + " is not prime");
    }
    if (t < 2 || t > n) {
        config_error("need 2 <= t <= n, got t=" + std::to_string(t) + ", n=" + std::to_string(n));
    }
    if (!allow_any_prime && (d < n || d > 2 * n)) {
        config_error("d=" + std::to_string(d) + " outside [n, 2n] = [" + std::to_string(n) + ", " +
                     std::to_string(2 * n) + "]; set allow_any_prime to override");
    }
    if (secrets.empty()) {
        config_error("at least one secret is required");
    }
    for (std::uint64_t s : secrets) {
        if (s >= d) {
            config_error("secret " + std::to_string(s) + " outside [0, " + std::to_string(d) + ")");
        }
    }
    if (!evaluation_points.empty() && evaluation_points.size() != n) {
        config_error("expected " + std::to_string(n) + " evaluation points");
    }
    for (std::uint64_t x : evaluation_points) {
        if (x >= d) {
            config_error("evaluation point " + std::to_string(x) + " outside [1, d)");
        }
    }
    try {
        validate_evaluation_points(points());
    } catch (const std::invalid_argument &e) {
        config_error(e.what());
    }
    auto members = qualified_set();
    if (members.size() != t) {
        config_error("qualified set must have exactly t=" + std::to_string(t) + " members");
    }
    if (std::set<std::size_t>(members.begin(), members.end()).size() != members.size()) {
        config_error("qualified set has repeated players");
    }
    for (std::size_t label : members) {
        if (label < 1 || label > n) {
            config_error("qualified player " + std::to_string(label) + " outside 1.." + std::to_string(n));
        }
    }
    if (initiator >= t) {
        config_error("initiator index must be below t");
    }
    if (!polynomials.empty()) {
        if (polynomials.size() != secrets.size()) {
            config_error("one pinned polynomial per secret is required");
        }
        for (std::size_t j = 0; j < polynomials.size(); ++j) {
            const auto &coeffs = polynomials[j];
            if (coeffs.size() != t) {
                config_error("pinned polynomial " + std::to_string(j + 1) + " must have t=" + std::to_string(t) +
                             " coefficients");
            }
            if (std::any_of(coeffs.begin(), coeffs.end(), [&](std::uint64_t c) { return c >= d; })) {
                config_error("pinned polynomial " + std::to_string(j + 1) + " has coefficients outside Z_d");
            }
            if (coeffs.front() != secrets[j]) {
                config_error("pinned polynomial " + std::to_string(j + 1) + " constant term differs from its secret");
            }
        }
    }
    if (shots == 0) {
        config_error("shots must be at least 1");
    }
    checked_state_size(d, t);
}

std::vector<std::size_t> RunConfig::qualified_set() const {
    if (!qualified.empty()) {
        return qualified;
    }
    std::vector<std::size_t> members(t);
    for (std::size_t u = 0; u < t; ++u) {
        members[u] = u + 1;
    }
    return members;
}

std::vector<FieldElement> RunConfig::points() const {
    if (evaluation_points.empty()) {
        return default_evaluation_points(n, d);
    }
    FieldElement zero(0, d);
    std::vector<FieldElement> xs;
    xs.reserve(evaluation_points.size());
    for (std::uint64_t x : evaluation_points) {
        xs.push_back(zero.with_value(x));
    }
    return xs;
}

RunConfig demo_config() {
    RunConfig config;
    config.secrets = {2, 3};
    config.n = 7;
    config.t = 3;
    config.d = 11;
    config.polynomials = {{2, 1, 1}, {3, 1, 1}};
    config.shots = 8192;
    config.seed = 2024;
    return config;
}

std::string player_name(std::size_t label) {
    return "P" + std::to_string(label);
}

std::string dealer_name(std::size_t index) {
    return "D" + std::to_string(index + 1);
}

void ClassicalChannel::send(Message message) {
    log_.push_back(std::move(message));
}

std::vector<Message> ClassicalChannel::inbox(const std::string &receiver) const {
    std::vector<Message> out;
    for (const auto &m : log_) {
        if (m.receiver == receiver) {
            out.push_back(m);
        }
    }
    return out;
}

std::vector<PlayerState> deal(const RunConfig &config, ClassicalChannel &channel, Rng &rng) {
    const auto points = config.points();
    for (std::size_t j = 0; j < config.secrets.size(); ++j) {
        const FieldElement secret(config.secrets[j], config.d);
        if (secret.value() != config.secrets[j]) {
            throw ConfigError("secret " + std::to_string(config.secrets[j]) + " outside Z_" + std::to_string(config.d));
        }
        Polynomial poly = config.polynomials.empty()
                              ? Polynomial::random_with_secret(secret, config.t, rng)
                              : Polynomial::from_residues(config.polynomials[j], config.d);
        auto shares = generate_shares(poly, points);
        for (std::size_t i = 0; i < shares.size(); ++i) {
            channel.send(Message{dealer_name(j), player_name(i + 1), MessageKind::kShare, shares[i]});
        }
    }
    std::vector<PlayerState> players;
    players.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        PlayerState player{i + 1, points[i], {}, std::nullopt, std::nullopt, std::nullopt, {}};
        for (const auto &m : channel.inbox(player_name(i + 1))) {
            if (m.kind == MessageKind::kShare && m.share) {
                player.dealer_shares.push_back(*m.share);
            }
        }
        players.push_back(std::move(player));
    }
    return players;
}

Share combine_local(PlayerState &player) {
    if (player.dealer_shares.empty()) {
        throw std::invalid_argument(player_name(player.label) + " holds no shares to combine");
    }
    Share combined = player.dealer_shares.front();
    for (std::size_t k = 1; k < player.dealer_shares.size(); ++k) {
        combined = add_shares(combined, player.dealer_shares[k]);
    }
    player.dealer_shares.clear();
    player.combined = combined;
    return combined;
}

QuditState distribute_entanglement(std::size_t t, std::uint64_t d, std::size_t initiator_position,
                                   const ChannelTap *tap, Rng &rng, std::vector<std::uint32_t> *observed) {
    QuditState state = prepare_ghz(t, d);
    for (std::size_t position = 0; position < t; ++position) {
        if (position == initiator_position || tap == nullptr || !tap->taps(position)) {
            continue;
        }
        auto seen = tap->on_transit(state, position, rng);
        if (seen && observed != nullptr) {
            observed->push_back(*seen);
        }
    }
    return state;
}

void apply_player_operations(QuditState &state, std::span<const Shadow> shadows) {
    if (shadows.size() != state.num_qudits()) {
        throw std::invalid_argument("need one shadow per qudit");
    }
    const auto qft = qft_matrix(state.dimension());
    for (std::size_t u = 0; u < shadows.size(); ++u) {
        if (shadows[u].value.modulus() != state.dimension()) {
            throw std::invalid_argument("shadow field does not match qudit dimension");
        }
        state.apply_single_qudit(u, qft);
        state.apply_shift(u, shadows[u].value.value());
    }
}

QuantumPhaseResult run_quantum_phase(std::span<const Shadow> shadows, std::uint64_t d, std::size_t shots,
                                     std::uint64_t seed, std::size_t initiator_position, const ChannelTap *tap) {
    const std::size_t t = shadows.size();
    checked_state_size(d, t);
    if (initiator_position >= t) {
        throw std::invalid_argument("initiator position out of range");
    }
    QuantumPhaseResult result;
    result.outcomes.resize(shots);
    if (tap != nullptr) {
        result.tap_observations.resize(shots);
    }
    const std::size_t blocks = (shots + kShotBlock - 1) / kShotBlock;
    internal::parallel_for(blocks, [&](std::size_t b) {
        Rng rng(derive_seed(seed, b));
        const std::size_t end = std::min(shots, (b + 1) * kShotBlock);
        for (std::size_t shot = b * kShotBlock; shot < end; ++shot) {
            auto *observed = tap != nullptr ? &result.tap_observations[shot] : nullptr;
            QuditState state = distribute_entanglement(t, d, initiator_position, tap, rng, observed);
            apply_player_operations(state, shadows);
            result.outcomes[shot] = state.measure_all(rng);
        }
    });
    return result;
}

FieldElement aggregate(std::span<const std::uint32_t> digits, std::uint64_t d) {
    FieldElement sum(0, d);
    for (std::uint32_t digit : digits) {
        if (digit >= d) {
            throw std::invalid_argument("broadcast digit " + std::to_string(digit) + " outside Z_" + std::to_string(d));
        }
        sum += sum.with_value(digit);
    }
    return sum;
}

std::string to_binary(std::uint64_t value) {
    if (value == 0) {
        return "0";
    }
    std::string bits;
    for (; value != 0; value >>= 1) {
        bits.insert(bits.begin(), static_cast<char>('0' + (value & 1)));
    }
    return bits;
}

ProtocolTranscript run_protocol(const RunConfig &config, const ChannelTap *tap) {
    config.validate();

    ProtocolTranscript transcript;
    transcript.config = config;

    ClassicalChannel channel;
    Rng dealing_rng(derive_seed(config.seed, 0));
    auto players = deal(config, channel, dealing_rng);
    for (auto &player : players) {
        combine_local(player);
    }

    const auto members = config.qualified_set();
    const auto all_points = config.points();
    std::vector<FieldElement> qualified_points;
    for (std::size_t label : members) {
        qualified_points.push_back(all_points[label - 1]);
    }
    std::vector<Shadow> shadows;
    for (std::size_t u = 0; u < members.size(); ++u) {
        PlayerState &player = players[members[u] - 1];
        player.shadow = compute_shadow(*player.combined, player.label, qualified_points);
        player.qudit_position = u;
        shadows.push_back(*player.shadow);
    }

    const std::string initiator = player_name(members[config.initiator]);
    for (std::size_t u = 0; u < members.size(); ++u) {
        if (u != config.initiator) {
            channel.send(Message{initiator, player_name(members[u]), MessageKind::kQudit, std::nullopt});
        }
    }

    auto phase = run_quantum_phase(shadows, config.d, config.shots, derive_seed(config.seed, 1), config.initiator,
                                   tap);

    transcript.histogram = Histogram{config.d, config.t, config.shots, config.seed, {}};
    transcript.shot_sums.reserve(config.shots);
    for (const auto &outcome : phase.outcomes) {
        for (std::size_t u = 0; u < members.size(); ++u) {
            players[members[u] - 1].measurements.push_back(outcome.digits[u]);
        }
        std::size_t index = 0;
        for (std::uint32_t digit : outcome.digits) {
            index = index * config.d + digit;
        }
        ++transcript.histogram.counts[index];
        transcript.shot_sums.push_back(aggregate(outcome.digits, config.d).value());
    }
    if (std::all_of(transcript.shot_sums.begin(), transcript.shot_sums.end(),
                    [&](std::uint64_t s) { return s == transcript.shot_sums.front(); })) {
        transcript.result = transcript.shot_sums.front();
    }

    transcript.players = std::move(players);
    transcript.messages.assign(channel.log().begin(), channel.log().end());
    transcript.shadows = std::move(shadows);
    transcript.bulletin = std::move(phase.outcomes);
    transcript.tap_observations = std::move(phase.tap_observations);
    return transcript;
}

}  // namespace qsms
