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

#ifndef QSMS_QUDIT_H_
#define QSMS_QUDIT_H_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qsms/rng.h"

namespace qsms {

using Amplitude = std::complex<double>;

/// Largest state vector the engine will allocate (d^t amplitudes).
inline constexpr std::size_t kMaxAmplitudes = std::size_t{1} << 24;

/// Tolerances: construction, per-operation drift, measurement gate.
inline constexpr double kConstructionTolerance = 1e-12;
inline constexpr double kOperationTolerance = 1e-9;
inline constexpr double kMeasurementTolerance = 1e-6;

/// One computational-basis reading per qudit, qudit 0 first.
struct MeasurementOutcome {
    std::vector<std::uint32_t> digits;

    bool operator==(const MeasurementOutcome &) const = default;
    auto operator<=>(const MeasurementOutcome &) const = default;
};

/// Digits joined by '-', e.g. "10-4-7".
std::string outcome_label(std::span<const std::uint32_t> digits);

/// Dense state vector over t qudits of prime dimension d.
///
/// Basis index i is read as t base-d digits with qudit 0 the most significant,
/// so |c_0 c_1 ... c_{t-1}> sits at index sum_k c_k d^{t-1-k}. Positions in
/// this API are 0-based.
class QuditState {
   public:
    /// Computational basis state |digits>.
    static QuditState basis(std::uint64_t d, std::span<const std::uint32_t> digits);

    /// Takes ownership of `amplitudes` (length d^t). The vector must already be
    /// normalized to within kConstructionTolerance.
    static QuditState from_amplitudes(std::uint64_t d, std::size_t t, std::vector<Amplitude> amplitudes);

    std::uint64_t dimension() const noexcept {
        return d_;
    }
    std::size_t num_qudits() const noexcept {
        return t_;
    }
    std::size_t size() const noexcept {
        return amplitudes_.size();
    }
    std::span<const Amplitude> amplitudes() const noexcept {
        return amplitudes_;
    }
    Amplitude amplitude(std::span<const std::uint32_t> digits) const;

    std::size_t index_of(std::span<const std::uint32_t> digits) const;
    std::vector<std::uint32_t> digits_of(std::size_t index) const;

    double norm_squared() const noexcept;

    /// Applies a d x d matrix (row-major) to the qudit at `position`.
    void apply_single_qudit(std::size_t position, std::span<const Amplitude> matrix);

    /// |a> -> d^{-1/2} sum_b w^{ab} |b>, w = exp(2 pi i / d).
    void apply_qft(std::size_t position);
    /// |b> -> d^{-1/2} sum_a w^{-ab} |a>.
    void apply_iqft(std::size_t position);
    /// Generalized Pauli U_{m,0}: |c> -> |c + m mod d>. `m` is reduced mod d.
    void apply_shift(std::size_t position, std::uint64_t m);

    /// Probability of each outcome for a single qudit.
    std::vector<double> marginal(std::size_t position) const;

    /// Projects qudit `position` onto |digit> and renormalizes. Returns the
    /// probability of that outcome; throws std::domain_error if it is zero.
    double project(std::size_t position, std::uint32_t digit);

    /// Measures one qudit in the computational basis, collapsing the state.
    std::uint32_t measure_qudit(std::size_t position, Rng &rng);

    /// Measures every qudit. The state collapses to the observed basis state.
    /// Throws std::domain_error("unnormalized state") if the norm is off by
    /// more than kMeasurementTolerance.
    MeasurementOutcome measure_all(Rng &rng);

   private:
    QuditState(std::uint64_t d, std::size_t t);

    std::size_t stride(std::size_t position) const;
    void check_position(std::size_t position) const;

    std::uint64_t d_;
    std::size_t t_;
    std::vector<Amplitude> amplitudes_;
};

/// Number of amplitudes for t qudits of dimension d. Throws GuardError above
/// kMaxAmplitudes and std::invalid_argument for non-prime d or t == 0.
std::size_t checked_state_size(std::uint64_t d, std::size_t t);

/// d x d QFT matrix (row-major). `inverse` conjugates the phases.
std::vector<Amplitude> qft_matrix(std::uint64_t d, bool inverse = false);

/// d^{-1/2} sum_c |c>^{(x) t}
QuditState prepare_ghz(std::size_t t, std::uint64_t d);

/// Closed form of the state after every holder of a GHZ leg applies the QFT
/// and then shifts by their shadow: uniform amplitude d^{-(t-1)/2} on every
/// basis state whose digit sum is congruent to sum(shadows) mod d.
QuditState analytic_post_transform_state(std::uint64_t d, std::span<const std::uint64_t> shadows);

/// Inverse-CDF sampler over |amplitude|^2 of a fixed state. Sampling never
/// mutates the state, so repeated draws model fresh copies.
class OutcomeSampler {
   public:
    explicit OutcomeSampler(const QuditState &state);
    std::size_t sample_index(Rng &rng) const;

   private:
    std::vector<double> cumulative_;
};

struct Histogram {
    std::uint64_t d = 0;
    std::size_t t = 0;
    std::size_t shots = 0;
    std::uint64_t seed = 0;
    /// Basis index -> count. Ordered by index for stable output.
    std::map<std::size_t, std::uint64_t> counts;

    std::vector<std::uint32_t> digits_of(std::size_t index) const;
};

/// Shots are drawn in fixed-size blocks, each from its own sub-stream of
/// `seed`, so the result does not depend on how many worker threads ran.
inline constexpr std::size_t kShotBlock = 1024;

Histogram sample_counts(const QuditState &state, std::size_t shots, std::uint64_t seed);

}  // namespace qsms

#endif  // QSMS_QUDIT_H_
