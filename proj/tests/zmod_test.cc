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

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"

using namespace qsms;

TEST(zmod, add) {
    EXPECT_EQ(add(FieldElement(9, 11), FieldElement(7, 11)).value(), 5u);
    EXPECT_EQ(add(FieldElement(10, 11), FieldElement(10, 11)).value(), 9u);
    for (std::uint64_t x = 0; x < 13; ++x) {
        EXPECT_EQ(add(FieldElement(0, 13), FieldElement(x, 13)), FieldElement(x, 13));
    }
}

TEST(zmod, mul) {
    EXPECT_EQ(mul(FieldElement(9, 11), FieldElement(3, 11)).value(), 5u);
    EXPECT_EQ(mul(FieldElement(7, 11), FieldElement(8, 11)).value(), 1u);
    EXPECT_EQ(mul(FieldElement(1, 7), FieldElement(6, 7)).value(), 6u);
}

TEST(zmod, modulus_mismatch_rejected) {
    EXPECT_THROW(add(FieldElement(1, 11), FieldElement(1, 13)), std::invalid_argument);
    EXPECT_THROW(mul(FieldElement(1, 11), FieldElement(1, 13)), std::invalid_argument);
}

TEST(zmod, construction_requires_prime_modulus) {
    EXPECT_THROW(FieldElement(1, 0), std::invalid_argument);
    EXPECT_THROW(FieldElement(1, 1), std::invalid_argument);
    EXPECT_THROW(FieldElement(1, 12), std::invalid_argument);
    EXPECT_NO_THROW(FieldElement(1, 18446744073709551557ULL));  // largest 64-bit prime
}

TEST(zmod, negative_values_are_canonicalized) {
    EXPECT_EQ(FieldElement(-1, 11).value(), 10u);
    EXPECT_EQ(FieldElement(-11, 11).value(), 0u);
    EXPECT_EQ(FieldElement(-23, 11).value(), 10u);
    EXPECT_EQ(FieldElement(1 - 2, 11) * FieldElement(2, 11), FieldElement(9, 11));
}

TEST(zmod, inverse_matches_brute_force) {
    EXPECT_EQ(inv(FieldElement(2, 11)).value(), 6u);
    EXPECT_EQ(inv(FieldElement(10, 11)).value(), 10u);
    for (std::uint64_t d : {2, 3, 5, 7, 11, 13, 101, 257}) {
        EXPECT_EQ(inv(FieldElement(1, d)).value(), 1u);
        for (std::uint64_t a = 1; a < d; ++a) {
            ASSERT_EQ(inv(FieldElement(a, d)).value(), oracle::brute_force_inverse(a, d)) << a << " mod " << d;
        }
    }
}

TEST(zmod, inverse_of_zero) {
    try {
        inv(FieldElement(0, 11));
        FAIL();
    } catch (const std::invalid_argument &e) {
        EXPECT_STREQ(e.what(), "no inverse of zero");
    }
}

TEST(zmod, large_modulus_arithmetic) {
    const std::uint64_t p = 18446744073709551557ULL;
    FieldElement a(p - 1, p), b(p - 2, p);
    EXPECT_EQ((a + b).value(), p - 3);
    EXPECT_EQ((a * a).value(), 1u);
    EXPECT_EQ((b * b.inverse()).value(), 1u);
}

TEST(zmod, field_laws_hold_exactly) {
    std::mt19937_64 rng(7);
    for (std::uint64_t d : {2ULL, 3ULL, 11ULL, 101ULL, 65537ULL, 4294967311ULL}) {
        for (int trial = 0; trial < 200; ++trial) {
            FieldElement a(rng() % d, d), b(rng() % d, d), c(rng() % d, d);
            ASSERT_EQ(a + b, b + a);
            ASSERT_EQ(a * b, b * a);
            ASSERT_EQ((a + b) + c, a + (b + c));
            ASSERT_EQ((a * b) * c, a * (b * c));
            ASSERT_EQ(a * (b + c), a * b + a * c);
            ASSERT_EQ(a - a, FieldElement(0, d));
            if (!a.is_zero()) {
                ASSERT_EQ(a * a.inverse(), FieldElement(1, d));
            }
        }
    }
}

TEST(zmod, lagrange_coefficient) {
    std::vector<FieldElement> points{FieldElement(1, 11), FieldElement(2, 11), FieldElement(3, 11)};
    EXPECT_EQ(lagrange_coefficient(0, points).value(), 3u);
    EXPECT_EQ(lagrange_coefficient(1, points).value(), 8u);
    EXPECT_EQ(lagrange_coefficient(2, points).value(), 1u);

    std::vector<FieldElement> single{FieldElement(4, 7)};
    EXPECT_EQ(lagrange_coefficient(0, single).value(), 1u);
}

TEST(zmod, lagrange_coefficient_errors) {
    std::vector<FieldElement> none;
    EXPECT_THROW(lagrange_coefficient(0, none), std::invalid_argument);
    std::vector<FieldElement> dup{FieldElement(1, 11), FieldElement(2, 11), FieldElement(2, 11)};
    EXPECT_THROW(lagrange_coefficient(0, dup), std::invalid_argument);
    std::vector<FieldElement> zero{FieldElement(0, 11), FieldElement(2, 11)};
    EXPECT_THROW(lagrange_coefficient(1, zero), std::invalid_argument);
    std::vector<FieldElement> mixed{FieldElement(1, 11), FieldElement(2, 13)};
    EXPECT_THROW(lagrange_coefficient(0, mixed), std::invalid_argument);
}

TEST(zmod, lagrange_coefficients_sum_to_one) {
    std::mt19937_64 rng(11);
    for (std::uint64_t d : {3, 5, 11, 13, 101}) {
        for (int trial = 0; trial < 50; ++trial) {
            std::size_t count = 1 + rng() % std::min<std::uint64_t>(d - 1, 6);
            std::vector<std::uint64_t> xs(d - 1);
            std::iota(xs.begin(), xs.end(), 1);
            std::shuffle(xs.begin(), xs.end(), rng);
            std::vector<FieldElement> points;
            for (std::size_t k = 0; k < count; ++k) {
                points.emplace_back(xs[k], d);
            }
            FieldElement sum(0, d);
            for (std::size_t u = 0; u < points.size(); ++u) {
                sum += lagrange_coefficient(u, points);
            }
            ASSERT_EQ(sum.value(), 1u);
        }
    }
}

TEST(zmod, smallest_valid_prime) {
    EXPECT_EQ(smallest_valid_prime(7), 7u);
    EXPECT_EQ(smallest_valid_prime(1), 2u);
    EXPECT_EQ(smallest_valid_prime(8), 11u);
    for (std::uint64_t n = 1; n < 2000; ++n) {
        std::uint64_t d = smallest_valid_prime(n);
        ASSERT_TRUE(oracle::trial_division_prime(d));
        ASSERT_GE(d, n);
        ASSERT_LE(d, 2 * n);
        for (std::uint64_t k = n; k < d; ++k) {
            ASSERT_FALSE(oracle::trial_division_prime(k));
        }
    }
}

TEST(zmod, smallest_shareable_prime_leaves_room_for_n_points) {
    EXPECT_EQ(smallest_shareable_prime(7), 11u);
    EXPECT_EQ(smallest_shareable_prime(1), 2u);
    EXPECT_EQ(smallest_shareable_prime(2), 3u);
    for (std::uint64_t n = 1; n < 500; ++n) {
        std::uint64_t d = smallest_shareable_prime(n);
        ASSERT_GT(d, n);
        ASSERT_LE(d, 2 * n);
    }
}

TEST(zmod, is_prime_matches_trial_division) {
    for (std::uint64_t n = 0; n < 20000; ++n) {
        ASSERT_EQ(is_prime(n), oracle::trial_division_prime(n)) << n;
    }
    EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
    EXPECT_TRUE(is_prime(4294967311ULL));
}
