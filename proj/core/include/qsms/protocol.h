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

#ifndef QSMS_PROTOCOL_H_
#define QSMS_PROTOCOL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsms/qudit.h"
#include "qsms/rng.h"
#include "qsms/shamir.h"
#include "qsms/zmod.h"

namespace qsms {

/// Parameters of one summation run. Players are labelled 1..n.
struct RunConfig {
    /// One secret per dealer, each in [0, d).
    std::vector<std::uint64_t> secrets;
    std::size_t n = 0;
    std::size_t t = 0;
    std::uint64_t d = 0;
    /// Skip the n <= d <= 2n window check (d must still be prime).
    bool allow_any_prime = false;
    /// Player labels of the qualified set; empty means 1..t.
    std::vector<std::size_t> qualified;
    /// x_i per player; empty means x_i = i.
    std::vector<std::uint64_t> evaluation_points;
    /// Pinned dealer coefficients (constant term first). Empty means draw
    /// them from the run seed.
    std::vector<std::vector<std::uint64_t>> polynomials;
    /// Index into the qualified set of the player who prepares the GHZ state.
    std::size_t initiator = 0;
    std::size_t shots = 1;
    std::uint64_t seed = 0;

    /// Throws ConfigError on any invariant violation.
    void validate() const;

    std::vector<std::size_t> qualified_set() const;
    std::vector<FieldElement> points() const;
};

/// Two dealers holding 2 and 3, f = 2 + x + x^2, g = 3 + x + x^2 over Z_11,
/// t = 3 of n = 7 players, 8192 shots.
RunConfig demo_config();

enum class MessageKind {
    kShare,  // dealer -> player, carries one share
    kQudit,  // initiator -> player, carries a GHZ leg and no classical data
};

struct Message {
    std::string sender;
    std::string receiver;
    MessageKind kind;
    /// Set for kShare only.
    std::optional<Share> share;
};

std::string player_name(std::size_t label);
std::string dealer_name(std::size_t index);

/// In-memory authenticated channel. Delivery is perfect; every message is logged.
class ClassicalChannel {
   public:
    void send(Message message);
    std::vector<Message> inbox(const std::string &receiver) const;
    std::span<const Message> log() const noexcept {
        return log_;
    }

   private:
    std::vector<Message> log_;
};

/// What one player knows. Built only from that player's own inbox.
struct PlayerState {
    std::size_t label;
    FieldElement x;
    /// Received from the dealers; cleared by combine_local.
    std::vector<Share> dealer_shares;
    std::optional<Share> combined;
    std::optional<Shadow> shadow;
    /// Position of this player's GHZ leg in the joint state.
    std::optional<std::size_t> qudit_position;
    /// This player's broadcast digit for each shot.
    std::vector<std::uint32_t> measurements;
};

/// Hook on the initiator -> player quantum channel. An installed tap sees the
/// joint state while the leg at `position` is in flight and may act on it.
class ChannelTap {
   public:
    virtual ~ChannelTap() = default;
    virtual bool taps(std::size_t position) const = 0;
    /// Returns whatever classical value the tap learned, if any. Must be safe
    /// to call concurrently from several shots.
    virtual std::optional<std::uint32_t> on_transit(QuditState &state, std::size_t position, Rng &rng) const = 0;
};

/// Dealers share their secrets over `channel`; each player then reads its
/// inbox. Coefficients come from `rng` unless pinned in the config.
std::vector<PlayerState> deal(const RunConfig &config, ClassicalChannel &channel, Rng &rng);

/// h(x_i) = sum of the player's dealer shares. Discards the per-dealer shares.
Share combine_local(PlayerState &player);

/// Initiator prepares the t-leg GHZ state and sends every other leg through
/// the (optionally tapped) quantum channel. Tap observations are appended to
/// `observed` when it is non-null.
QuditState distribute_entanglement(std::size_t t, std::uint64_t d, std::size_t initiator_position,
                                   const ChannelTap *tap, Rng &rng,
                                   std::vector<std::uint32_t> *observed = nullptr);

/// QFT then U_{m_u,0} on every leg, leg u held by the u-th shadow owner.
void apply_player_operations(QuditState &state, std::span<const Shadow> shadows);

struct QuantumPhaseResult {
    std::vector<MeasurementOutcome> outcomes;
    /// Per shot, whatever an installed tap observed (empty without a tap).
    std::vector<std::vector<std::uint32_t>> tap_observations;
};

/// Repeats GHZ preparation, distribution, local operations and measurement
/// once per shot. Shots run in parallel blocks with sub-streams of `seed`.
QuantumPhaseResult run_quantum_phase(std::span<const Shadow> shadows, std::uint64_t d, std::size_t shots,
                                     std::uint64_t seed, std::size_t initiator_position = 0,
                                     const ChannelTap *tap = nullptr);

/// Sum of the broadcast digits mod d.
FieldElement aggregate(std::span<const std::uint32_t> digits, std::uint64_t d);

/// Binary rendering of a result, e.g. 5 -> "101".
std::string to_binary(std::uint64_t value);

struct ProtocolTranscript {
    RunConfig config;
    std::vector<PlayerState> players;
    std::vector<Message> messages;
    std::vector<Shadow> shadows;
    /// Broadcast digits per shot, in shot order.
    std::vector<MeasurementOutcome> bulletin;
    std::vector<std::uint64_t> shot_sums;
    /// Per shot tap observations; empty on an honest run.
    std::vector<std::vector<std::uint32_t>> tap_observations;
    Histogram histogram;
    /// Set when every shot aggregated to the same value.
    std::optional<std::uint64_t> result;

    bool all_shots_agree() const {
        return result.has_value();
    }
};

/// Full run: deal, combine, shadows, quantum phase, broadcast, aggregate.
/// Validates the config before doing any work.
ProtocolTranscript run_protocol(const RunConfig &config, const ChannelTap *tap = nullptr);

}  // namespace qsms

#endif  // QSMS_PROTOCOL_H_
