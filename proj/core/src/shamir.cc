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

#include "qsms/shamir.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qsms {

Polynomial::Polynomial(std::vector<FieldElement> coefficients) : coefficients_(std::move(coefficients)) {
    if (coefficients_.empty()) {
        throw std::invalid_argument("polynomial needs at least a constant term");
    }
    for (const auto &c : coefficients_) {
        if (c.modulus() != coefficients_.front().modulus()) {
            throw std::invalid_argument("polynomial coefficients span several moduli");
        }
    }
}

Polynomial Polynomial::from_residues(std::span<const std::uint64_t> coefficients, std::uint64_t modulus) {
    if (coefficients.empty()) {
        throw std::invalid_argument("polynomial needs at least a constant term");
    }
    FieldElement zero(0, modulus);
    std::vector<FieldElement> coeffs;
    coeffs.reserve(coefficients.size());
    for (std::uint64_t c : coefficients) {
        coeffs.push_back(zero.with_value(c));
    }
    return Polynomial(std::move(coeffs));
}

Polynomial Polynomial::random_with_secret(const FieldElement &secret, std::size_t threshold, Rng &rng) {
    if (threshold == 0) {
        throw std::invalid_argument("threshold must be at least 1");
    }
    std::vector<FieldElement> coeffs{secret};
    coeffs.reserve(threshold);
    for (std::size_t i = 1; i < threshold; ++i) {
        coeffs.push_back(secret.with_value(uniform_below(rng, secret.modulus())));
    }
    return Polynomial(std::move(coeffs));
}

FieldElement Polynomial::evaluate(const FieldElement &x) const {
    FieldElement acc = x.with_value(0);
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

std::vector<FieldElement> default_evaluation_points(std::size_t n, std::uint64_t modulus) {
    if (n >= modulus) {
        throw std::invalid_argument("cannot place " + std::to_string(n) + " distinct nonzero evaluation points in Z_" +
                                    std::to_string(modulus) + "; need d > n");
    }
    FieldElement zero(0, modulus);
    std::vector<FieldElement> points;
    points.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        points.push_back(zero.with_value(i));
    }
    return points;
}

void validate_evaluation_points(std::span<const FieldElement> points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].modulus() != points.front().modulus()) {
            throw std::invalid_argument("evaluation points span several moduli");
        }
        if (points[i].is_zero()) {
            throw std::invalid_argument("evaluation point 0 is reserved for the secret");
        }
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (points[i] == points[j]) {
                throw std::invalid_argument("duplicate evaluation point " + std::to_string(points[i].value()));
            }
        }
    }
}

std::vector<Share> generate_shares(const Polynomial &poly, std::span<const FieldElement> points) {
    validate_evaluation_points(points);
    std::vector<Share> shares;
    shares.reserve(points.size());
    for (const auto &x : points) {
        if (x.modulus() != poly.modulus()) {
            throw std::invalid_argument("evaluation points and polynomial live in different fields");
        }
        shares.push_back(Share{x, poly.evaluate(x)});
    }
    return shares;
}

Share add_shares(const Share &a, const Share &b) {
    if (a.x != b.x) {
        throw std::invalid_argument("cannot add shares at different evaluation points " + std::to_string(a.x.value()) +
                                    " and " + std::to_string(b.x.value()));
    }
    return Share{a.x, a.value + b.value};
}

FieldElement reconstruct(std::span<const Share> shares, std::size_t threshold) {
    if (shares.empty() || shares.size() < threshold) {
        throw std::invalid_argument("insufficient shares: have " + std::to_string(shares.size()) + ", need " +
                                    std::to_string(threshold));
    }
    std::vector<FieldElement> points;
    points.reserve(shares.size());
    for (const auto &s : shares) {
        points.push_back(s.x);
    }
    validate_evaluation_points(points);
    FieldElement secret = shares.front().value.with_value(0);
    for (std::size_t v = 0; v < shares.size(); ++v) {
        secret += shares[v].value * lagrange_coefficient(v, points);
    }
    return secret;
}

Shadow compute_shadow(const Share &share, std::size_t owner, std::span<const FieldElement> qualified_points) {
    auto it = std::find(qualified_points.begin(), qualified_points.end(), share.x);
    if (it == qualified_points.end()) {
        throw std::invalid_argument("share at x=" + std::to_string(share.x.value()) +
                                    " is not part of the qualified set");
    }
    auto index = static_cast<std::size_t>(it - qualified_points.begin());
    return Shadow{owner, share.value * lagrange_coefficient(index, qualified_points)};
}

}  // namespace qsms
