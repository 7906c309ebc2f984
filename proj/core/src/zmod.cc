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

#include "qsms/zmod.h"

#include <ostream>
#include <stdexcept>
#include <string>

namespace qsms {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1) {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) {
            return n == p;
        }
    }
    std::uint64_t odd = n - 1;
    int twos = 0;
    while ((odd & 1) == 0) {
        odd >>= 1;
        ++twos;
    }
    // This witness set is exact below 3.3e24.
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = pow_mod(a, odd, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (int r = 1; r < twos; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

std::uint64_t smallest_valid_prime(std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("player count must be at least 1");
    }
    for (std::uint64_t d = n;; ++d) {
        if (is_prime(d)) {
            return d;
        }
    }
}

std::uint64_t smallest_shareable_prime(std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("player count must be at least 1");
    }
    return smallest_valid_prime(n + 1);
}

std::uint64_t FieldElement::checked(std::uint64_t modulus) {
    if (!is_prime(modulus)) {
        throw std::invalid_argument("modulus " + std::to_string(modulus) + " is not prime");
    }
    return modulus;
}

void FieldElement::require_same_field(const FieldElement &other) const {
    if (modulus_ != other.modulus_) {
        throw std::invalid_argument(
            "modulus mismatch: " + std::to_string(modulus_) + " vs " + std::to_string(other.modulus_));
    }
}

FieldElement FieldElement::operator-() const noexcept {
    return FieldElement(Unchecked{}, value_ == 0 ? 0 : modulus_ - value_, modulus_);
}

FieldElement &FieldElement::operator+=(const FieldElement &other) {
    require_same_field(other);
    // a + b may not fit in 64 bits when the modulus is close to 2^64.
    value_ = value_ >= modulus_ - other.value_ ? value_ - (modulus_ - other.value_) : value_ + other.value_;
    return *this;
}

FieldElement &FieldElement::operator-=(const FieldElement &other) {
    require_same_field(other);
    value_ = value_ >= other.value_ ? value_ - other.value_ : value_ + (modulus_ - other.value_);
    return *this;
}

FieldElement &FieldElement::operator*=(const FieldElement &other) {
    require_same_field(other);
    value_ = mul_mod(value_, other.value_, modulus_);
    return *this;
}

FieldElement FieldElement::inverse() const {
    if (value_ == 0) {
        throw std::invalid_argument("no inverse of zero");
    }
    // Extended Euclid on (modulus, value), tracking only the value's Bezout coefficient.
    __int128 r0 = modulus_, r1 = value_;
    __int128 s0 = 0, s1 = 1;
    while (r1 != 0) {
        __int128 q = r0 / r1;
        __int128 r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        __int128 s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
    }
    if (s0 < 0) {
        s0 += modulus_;
    }
    return FieldElement(Unchecked{}, static_cast<std::uint64_t>(s0), modulus_);
}

std::ostream &operator<<(std::ostream &out, const FieldElement &e) {
    return out << e.value() << " (mod " << e.modulus() << ")";
}

FieldElement add(const FieldElement &a, const FieldElement &b) {
    return a + b;
}

FieldElement mul(const FieldElement &a, const FieldElement &b) {
    return a * b;
}

FieldElement inv(const FieldElement &a) {
    return a.inverse();
}

FieldElement lagrange_coefficient(std::size_t index, std::span<const FieldElement> points) {
    if (points.empty()) {
        throw std::invalid_argument("lagrange_coefficient needs at least one point");
    }
    if (index >= points.size()) {
        throw std::invalid_argument("lagrange_coefficient index out of range");
    }
    const FieldElement &xu = points[index];
    FieldElement numerator = xu.with_value(1);
    FieldElement denominator = xu.with_value(1);
    for (std::size_t z = 0; z < points.size(); ++z) {
        if (points[z].modulus() != xu.modulus()) {
            throw std::invalid_argument("lagrange_coefficient points span several moduli");
        }
        if (points[z].is_zero()) {
            throw std::invalid_argument("evaluation point 0 is reserved for the secret");
        }
        for (std::size_t w = z + 1; w < points.size(); ++w) {
            if (points[w] == points[z]) {
                throw std::invalid_argument("duplicate evaluation point " + std::to_string(points[z].value()));
            }
        }
        if (z == index) {
            continue;
        }
        numerator *= points[z];
        denominator *= points[z] - xu;
    }
    return numerator * denominator.inverse();
}

}  // namespace qsms
