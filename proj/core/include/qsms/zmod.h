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

#ifndef QSMS_ZMOD_H_
#define QSMS_ZMOD_H_

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>

namespace qsms {

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

/// Smallest prime d with n <= d <= 2n.
std::uint64_t smallest_valid_prime(std::uint64_t n);

/// Smallest prime d with n < d <= 2n, i.e. the smallest field that has n distinct
/// nonzero evaluation points. Differs from smallest_valid_prime only when n is prime.
std::uint64_t smallest_shareable_prime(std::uint64_t n);

/// A residue modulo a prime. The modulus travels with the value so that
/// elements of different fields can coexist; mixing them throws.
class FieldElement {
   public:
    /// Reduces `value` into [0, modulus). Negative inputs are canonicalized, so
    /// FieldElement(-1, 11).value() == 10. Throws std::invalid_argument if the
    /// modulus is not prime.
    template <std::integral T>
    FieldElement(T value, std::uint64_t modulus) : FieldElement(Unchecked{}, reduce(value, checked(modulus)), modulus) {
    }

    std::uint64_t value() const noexcept {
        return value_;
    }
    std::uint64_t modulus() const noexcept {
        return modulus_;
    }
    bool is_zero() const noexcept {
        return value_ == 0;
    }

    FieldElement operator-() const noexcept;
    FieldElement inverse() const;

    FieldElement &operator+=(const FieldElement &other);
    FieldElement &operator-=(const FieldElement &other);
    FieldElement &operator*=(const FieldElement &other);

    friend FieldElement operator+(FieldElement a, const FieldElement &b) {
        return a += b;
    }
    friend FieldElement operator-(FieldElement a, const FieldElement &b) {
        return a -= b;
    }
    friend FieldElement operator*(FieldElement a, const FieldElement &b) {
        return a *= b;
    }
    bool operator==(const FieldElement &) const = default;

    /// Same field, different residue. Skips the primality check.
    FieldElement with_value(std::uint64_t v) const noexcept {
        return FieldElement(Unchecked{}, v % modulus_, modulus_);
    }

   private:
    struct Unchecked {};
    FieldElement(Unchecked, std::uint64_t value, std::uint64_t modulus) noexcept : value_(value), modulus_(modulus) {
    }

    static std::uint64_t checked(std::uint64_t modulus);

    template <std::integral T>
    static std::uint64_t reduce(T value, std::uint64_t modulus) noexcept {
        if constexpr (std::signed_integral<T>) {
            if (value < 0) {
                auto magnitude = static_cast<unsigned __int128>(-static_cast<__int128>(value)) % modulus;
                return magnitude == 0 ? 0 : modulus - static_cast<std::uint64_t>(magnitude);
            }
        }
        return static_cast<std::uint64_t>(value) % modulus;
    }

    void require_same_field(const FieldElement &other) const;

    std::uint64_t value_;
    std::uint64_t modulus_;
};

std::ostream &operator<<(std::ostream &out, const FieldElement &e);

FieldElement add(const FieldElement &a, const FieldElement &b);
FieldElement mul(const FieldElement &a, const FieldElement &b);
/// Extended Euclid. Throws std::invalid_argument("no inverse of zero") on zero.
FieldElement inv(const FieldElement &a);

/// Lagrange basis weight at zero for `points[index]`:
///   prod_{z != index} x_z * (x_z - x_index)^{-1}  (mod d)
/// Points must be distinct, nonzero and share one modulus.
FieldElement lagrange_coefficient(std::size_t index, std::span<const FieldElement> points);

}  // namespace qsms

#endif  // QSMS_ZMOD_H_
