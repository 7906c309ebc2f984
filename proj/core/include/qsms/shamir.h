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

#ifndef QSMS_SHAMIR_H_
#define QSMS_SHAMIR_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qsms/rng.h"
#include "qsms/zmod.h"

namespace qsms {

/// Dealer polynomial of degree at most t-1. Coefficient 0 is the secret.
class Polynomial {
   public:
    /// Throws std::invalid_argument if empty or if coefficients span several moduli.
    explicit Polynomial(std::vector<FieldElement> coefficients);

    /// Coefficients given as residues in Z_d, constant term first.
    static Polynomial from_residues(std::span<const std::uint64_t> coefficients, std::uint64_t modulus);

    /// Secret in the constant term, remaining t-1 coefficients uniform in Z_d.
    static Polynomial random_with_secret(const FieldElement &secret, std::size_t threshold, Rng &rng);

    const FieldElement &secret() const noexcept {
        return coefficients_.front();
    }
    std::size_t threshold() const noexcept {
        return coefficients_.size();
    }
    std::uint64_t modulus() const noexcept {
        return coefficients_.front().modulus();
    }
    std::span<const FieldElement> coefficients() const noexcept {
        return coefficients_;
    }

    FieldElement evaluate(const FieldElement &x) const;

   private:
    std::vector<FieldElement> coefficients_;
};

/// A player's point on a dealer polynomial (or on the sum of several).
struct Share {
    FieldElement x;
    FieldElement value;

    bool operator==(const Share &) const = default;
};

/// Lagrange-weighted share m_u held by qualified player `owner`. The shadows of
/// a qualified set sum to the shared secret.
struct Shadow {
    std::size_t owner;
    FieldElement value;

    bool operator==(const Shadow &) const = default;
};

/// x_i = i for i = 1..n. Throws if n >= d (points would collide or hit zero).
std::vector<FieldElement> default_evaluation_points(std::size_t n, std::uint64_t modulus);

/// Throws std::invalid_argument unless the points are distinct, nonzero and in one field.
void validate_evaluation_points(std::span<const FieldElement> points);

std::vector<Share> generate_shares(const Polynomial &poly, std::span<const FieldElement> points);

/// Pointwise share addition. Both shares must sit at the same evaluation point.
Share add_shares(const Share &a, const Share &b);

/// Interpolates the constant term from every share given. Throws
/// std::invalid_argument("insufficient shares") when fewer than `threshold`
/// are supplied.
FieldElement reconstruct(std::span<const Share> shares, std::size_t threshold);

/// m_u = h(x_u) * lagrange_coefficient(u, qualified_points). `share.x` must be
/// one of the qualified points.
Shadow compute_shadow(const Share &share, std::size_t owner, std::span<const FieldElement> qualified_points);

}  // namespace qsms

#endif  // QSMS_SHAMIR_H_
