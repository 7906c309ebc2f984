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

#include "qsms/qudit.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "parallel.h"
#include "qsms/error.h"
#include "qsms/zmod.h"

namespace qsms {

std::string outcome_label(std::span<const std::uint32_t> digits) {
    std::string label;
    for (std::size_t k = 0; k < digits.size(); ++k) {
        if (k != 0) {
            label += '-';
        }
        label += std::to_string(digits[k]);
    }
    return label;
}

std::size_t checked_state_size(std::uint64_t d, std::size_t t) {
    if (!is_prime(d)) {
        throw std::invalid_argument("qudit dimension " + std::to_string(d) + " is not prime");
    }
    if (t == 0) {
        throw std::invalid_argument("need at least one qudit");
    }
    std::size_t size = 1;
    for (std::size_t k = 0; k < t; ++k) {
        if (d > kMaxAmplitudes / size) {
            throw GuardError("state of " + std::to_string(t) + " qudits of dimension " + std::to_string(d) +
                             " exceeds the " + std::to_string(kMaxAmplitudes) + "-amplitude guard");
        }
        size *= d;
    }
    return size;
}

QuditState::QuditState(std::uint64_t d, std::size_t t) : d_(d), t_(t), amplitudes_(checked_state_size(d, t)) {
}

QuditState QuditState::basis(std::uint64_t d, std::span<const std::uint32_t> digits) {
    QuditState state(d, digits.size());
    state.amplitudes_[state.index_of(digits)] = 1.0;
    return state;
}

QuditState QuditState::from_amplitudes(std::uint64_t d, std::size_t t, std::vector<Amplitude> amplitudes) {
    QuditState state(d, t);
    if (amplitudes.size() != state.amplitudes_.size()) {
        throw std::invalid_argument("expected " + std::to_string(state.amplitudes_.size()) + " amplitudes, got " +
                                    std::to_string(amplitudes.size()));
    }
    state.amplitudes_ = std::move(amplitudes);
    if (std::abs(state.norm_squared() - 1.0) > kConstructionTolerance) {
        throw std::invalid_argument("amplitudes are not normalized");
    }
    return state;
}

std::size_t QuditState::index_of(std::span<const std::uint32_t> digits) const {
    if (digits.size() != t_) {
        throw std::invalid_argument("expected " + std::to_string(t_) + " digits, got " + std::to_string(digits.size()));
    }
    std::size_t index = 0;
    for (std::uint32_t digit : digits) {
        if (digit >= d_) {
            throw std::invalid_argument("digit " + std::to_string(digit) + " out of range for d=" + std::to_string(d_));
        }
        index = index * d_ + digit;
    }
    return index;
}

std::vector<std::uint32_t> QuditState::digits_of(std::size_t index) const {
    std::vector<std::uint32_t> digits(t_);
    for (std::size_t k = t_; k-- > 0;) {
        digits[k] = static_cast<std::uint32_t>(index % d_);
        index /= d_;
    }
    return digits;
}

Amplitude QuditState::amplitude(std::span<const std::uint32_t> digits) const {
    return amplitudes_[index_of(digits)];
}

double QuditState::norm_squared() const noexcept {
    double total = 0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

void QuditState::check_position(std::size_t position) const {
    if (position >= t_) {
        throw std::out_of_range("qudit position " + std::to_string(position) + " out of range for " +
                                std::to_string(t_) + " qudits");
    }
}

std::size_t QuditState::stride(std::size_t position) const {
    std::size_t s = 1;
    for (std::size_t k = position + 1; k < t_; ++k) {
        s *= d_;
    }
    return s;
}

void QuditState::apply_single_qudit(std::size_t position, std::span<const Amplitude> matrix) {
    check_position(position);
    if (matrix.size() != d_ * d_) {
        throw std::invalid_argument("single-qudit operator must be d x d");
    }
    const std::size_t s = stride(position);
    const std::size_t block = s * d_;
    std::vector<Amplitude> in(d_);
    for (std::size_t outer = 0; outer < amplitudes_.size(); outer += block) {
        for (std::size_t inner = 0; inner < s; ++inner) {
            Amplitude *base = amplitudes_.data() + outer + inner;
            for (std::size_t a = 0; a < d_; ++a) {
                in[a] = base[a * s];
            }
            for (std::size_t b = 0; b < d_; ++b) {
                Amplitude acc = 0;
                const Amplitude *row = matrix.data() + b * d_;
                for (std::size_t a = 0; a < d_; ++a) {
                    acc += row[a] * in[a];
                }
                base[b * s] = acc;
            }
        }
    }
}

std::vector<Amplitude> qft_matrix(std::uint64_t d, bool inverse) {
    if (d == 0) {
        throw std::invalid_argument("dimension must be positive");
    }
    // Reduce the exponent mod d before taking cos/sin so every entry is one of
    // the d exact roots of unity.
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    const double sign = inverse ? -1.0 : 1.0;
    std::vector<Amplitude> roots(d);
    for (std::uint64_t k = 0; k < d; ++k) {
        double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d);
        roots[k] = Amplitude(std::cos(angle), std::sin(angle)) * scale;
    }
    std::vector<Amplitude> matrix(d * d);
    for (std::uint64_t b = 0; b < d; ++b) {
        for (std::uint64_t a = 0; a < d; ++a) {
            matrix[b * d + a] = roots[(a * b) % d];
        }
    }
    return matrix;
}

void QuditState::apply_qft(std::size_t position) {
    apply_single_qudit(position, qft_matrix(d_, false));
}

void QuditState::apply_iqft(std::size_t position) {
    apply_single_qudit(position, qft_matrix(d_, true));
}

void QuditState::apply_shift(std::size_t position, std::uint64_t m) {
    check_position(position);
    m %= d_;
    if (m == 0) {
        return;
    }
    const std::size_t s = stride(position);
    const std::size_t block = s * d_;
    std::vector<Amplitude> in(d_);
    for (std::size_t outer = 0; outer < amplitudes_.size(); outer += block) {
        for (std::size_t inner = 0; inner < s; ++inner) {
            Amplitude *base = amplitudes_.data() + outer + inner;
            for (std::size_t c = 0; c < d_; ++c) {
                in[c] = base[c * s];
            }
            for (std::size_t c = 0; c < d_; ++c) {
                base[((c + m) % d_) * s] = in[c];
            }
        }
    }
}

std::vector<double> QuditState::marginal(std::size_t position) const {
    check_position(position);
    const std::size_t s = stride(position);
    std::vector<double> probs(d_, 0.0);
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        probs[(i / s) % d_] += std::norm(amplitudes_[i]);
    }
    return probs;
}

double QuditState::project(std::size_t position, std::uint32_t digit) {
    check_position(position);
    if (digit >= d_) {
        throw std::invalid_argument("digit out of range");
    }
    const std::size_t s = stride(position);
    double kept = 0;
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if ((i / s) % d_ == digit) {
            kept += std::norm(amplitudes_[i]);
        } else {
            amplitudes_[i] = 0;
        }
    }
    if (kept <= 0) {
        throw std::domain_error("projection onto a zero-probability outcome");
    }
    const double scale = 1.0 / std::sqrt(kept);
    for (auto &a : amplitudes_) {
        a *= scale;
    }
    return kept;
}

std::uint32_t QuditState::measure_qudit(std::size_t position, Rng &rng) {
    std::vector<double> probs = marginal(position);
    double total = 0;
    for (double p : probs) {
        total += p;
    }
    if (std::abs(total - 1.0) > kMeasurementTolerance) {
        throw std::domain_error("unnormalized state");
    }
    double r = uniform_unit(rng) * total;
    std::uint32_t digit = 0;
    double acc = 0;
    for (; digit + 1 < d_; ++digit) {
        acc += probs[digit];
        if (r < acc) {
            break;
        }
    }
    // Floating-point leftovers can land r past the last nonzero bucket.
    while (probs[digit] == 0 && digit > 0) {
        --digit;
    }
    project(position, digit);
    return digit;
}

MeasurementOutcome QuditState::measure_all(Rng &rng) {
    if (std::abs(norm_squared() - 1.0) > kMeasurementTolerance) {
        throw std::domain_error("unnormalized state");
    }
    std::size_t index = OutcomeSampler(*this).sample_index(rng);
    std::fill(amplitudes_.begin(), amplitudes_.end(), Amplitude(0));
    amplitudes_[index] = 1.0;
    return MeasurementOutcome{digits_of(index)};
}

QuditState prepare_ghz(std::size_t t, std::uint64_t d) {
    std::vector<Amplitude> amplitudes(checked_state_size(d, t));
    // |cc...c> sits at c * (1 + d + ... + d^{t-1}).
    std::size_t repunit = 0;
    for (std::size_t k = 0; k < t; ++k) {
        repunit = repunit * d + 1;
    }
    const double weight = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::uint64_t c = 0; c < d; ++c) {
        amplitudes[c * repunit] = weight;
    }
    return QuditState::from_amplitudes(d, t, std::move(amplitudes));
}

QuditState analytic_post_transform_state(std::uint64_t d, std::span<const std::uint64_t> shadows) {
    const std::size_t t = shadows.size();
    std::vector<Amplitude> amplitudes(checked_state_size(d, t));
    std::uint64_t target = 0;
    for (std::uint64_t m : shadows) {
        if (m >= d) {
            throw std::invalid_argument("shadow " + std::to_string(m) + " out of range for d=" + std::to_string(d));
        }
        target = (target + m) % d;
    }
    const double weight = std::pow(static_cast<double>(d), -0.5 * static_cast<double>(t - 1));
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        std::uint64_t digit_sum = 0;
        for (std::size_t rest = i; rest != 0; rest /= d) {
            digit_sum += rest % d;
        }
        if (digit_sum % d == target) {
            amplitudes[i] = weight;
        }
    }
    return QuditState::from_amplitudes(d, t, std::move(amplitudes));
}

OutcomeSampler::OutcomeSampler(const QuditState &state) {
    cumulative_.reserve(state.size());
    double acc = 0;
    for (const auto &a : state.amplitudes()) {
        acc += std::norm(a);
        cumulative_.push_back(acc);
    }
}

std::size_t OutcomeSampler::sample_index(Rng &rng) const {
    double r = uniform_unit(rng) * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
    if (it == cumulative_.end()) {
        --it;
    }
    return static_cast<std::size_t>(it - cumulative_.begin());
}

std::vector<std::uint32_t> Histogram::digits_of(std::size_t index) const {
    std::vector<std::uint32_t> digits(t);
    for (std::size_t k = t; k-- > 0;) {
        digits[k] = static_cast<std::uint32_t>(index % d);
        index /= d;
    }
    return digits;
}

Histogram sample_counts(const QuditState &state, std::size_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("shots must be at least 1");
    }
    if (std::abs(state.norm_squared() - 1.0) > kMeasurementTolerance) {
        throw std::domain_error("unnormalized state");
    }
    const OutcomeSampler sampler(state);
    const std::size_t blocks = (shots + kShotBlock - 1) / kShotBlock;
    std::vector<std::vector<std::size_t>> drawn(blocks);
    internal::parallel_for(blocks, [&](std::size_t b) {
        Rng rng(derive_seed(seed, b));
        std::size_t n = std::min(kShotBlock, shots - b * kShotBlock);
        drawn[b].reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            drawn[b].push_back(sampler.sample_index(rng));
        }
    });
    Histogram histogram{state.dimension(), state.num_qudits(), shots, seed, {}};
    for (const auto &block : drawn) {
        for (std::size_t index : block) {
            ++histogram.counts[index];
        }
    }
    return histogram;
}

}  // namespace qsms
