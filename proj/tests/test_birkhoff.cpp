#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "anosov/birkhoff.hpp"
#include "anosov/errors.hpp"
#include "oracles.hpp"

using namespace anosov;

TEST(Birkhoff, ValidateExamples) {
    EXPECT_TRUE(validate({1, 1, 1}).ok);
    EXPECT_TRUE(validate({1, 1, 1}).embedded);
    const auto bad = validate({1, 2, 4});
    EXPECT_FALSE(bad.ok);
    ASSERT_EQ(bad.violations.size(), 1u);
    const auto c = validate({2, 3, -2});
    EXPECT_TRUE(c.ok);
    EXPECT_FALSE(c.embedded);
    EXPECT_FALSE(validate({0, 0, 0}).ok);
    EXPECT_GE(validate({0, 0, 0}).violations.size(), 3u);
}

TEST(Birkhoff, ModInverse) {
    EXPECT_EQ(mod_inverse(2, 3), 2);
    EXPECT_EQ(mod_inverse(3, 5), 2);
    EXPECT_EQ(mod_inverse(-2, 5), 2);
    EXPECT_THROW(mod_inverse(2, 4), DomainError);
}

TEST(Birkhoff, PermutationExamples) {
    for (int m : {-3, -1, 1, 2}) {
        const auto q = quadrant_permutation(1, m);
        for (int j = 1; j <= 4; ++j) EXPECT_EQ(q.apply(j), j);
    }
    const auto a = quadrant_permutation(2, 1);
    for (int j = 1; j <= 8; ++j) EXPECT_EQ(a.apply(j), (j + 4 - 1) % 8 + 1);
    const auto b = quadrant_permutation(3, 2);
    EXPECT_EQ(b.l, 2);
    EXPECT_EQ(b.shift, 8);
    for (int j = 1; j <= 12; ++j) EXPECT_EQ(b.apply(j), (j + 8 - 1) % 12 + 1);
    EXPECT_THROW(quadrant_permutation(2, 4), DomainError);
    EXPECT_THROW(quadrant_permutation(3, 0), DomainError);
    EXPECT_THROW(quadrant_permutation(0, 1), ParameterError);
}

TEST(Birkhoff, PermutationSignDispatch) {
    const auto plus = quadrant_permutation(5, 2);
    const auto minus = quadrant_permutation(5, -2);
    EXPECT_EQ(plus.shift, 4 * 3);
    // −2 ≡ 3 and 3⁻¹ ≡ 2 (mod 5); the negative branch subtracts
    EXPECT_EQ(minus.l, 2);
    EXPECT_EQ(minus.shift, -8);
}

TEST(Birkhoff, PowerShiftExamples) {
    const auto a = kth_power_shift(2, 1);
    ASSERT_TRUE(a);
    EXPECT_EQ(a->k, 1);
    const auto b = kth_power_shift(5, 3);
    ASSERT_TRUE(b);
    EXPECT_EQ(b->k, 3);
    EXPECT_EQ(b->l, 2);
    EXPECT_EQ(b->k * b->l % 5, 1);
    const auto c = kth_power_shift(3, -2);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->k, 1);
    EXPECT_FALSE(kth_power_shift(1, 1).has_value());
}

TEST(Birkhoff, ExhaustivePermutationProperties) {
    for (int n = 1; n <= 50; ++n) {
        for (int m = -50; m <= 50; ++m) {
            if (m == 0 || std::gcd(n, std::abs(m)) != 1) continue;
            const auto q = quadrant_permutation(n, m);
            ASSERT_EQ(q.order(), n) << n << ' ' << m;
            for (int j = 1; j <= 4 * n; ++j) ASSERT_EQ((q.apply(j) - j) % 4, 0);
            // one n-cycle per residue class
            for (int start = 1; start <= 4; ++start) {
                int j = start;
                int len = 0;
                do {
                    j = q.apply(j);
                    ++len;
                } while (j != start && len <= n);
                ASSERT_EQ(len, n);
            }
            if (n > 1) {
                const auto k = kth_power_shift(n, m);
                ASSERT_TRUE(k);
                ASSERT_EQ((static_cast<long>(k->k) * k->l) % n, 1);
                ASSERT_EQ(k->l, oracle::inverse_mod(m, n));
                // P^k moves every quadrant by ±4
                int j = 1;
                for (int i = 0; i < k->k; ++i) j = q.apply(j);
                const int expected = ((1 - 1 + k->shift) % (4 * n) + 4 * n) % (4 * n) + 1;
                ASSERT_EQ(j, expected) << n << ' ' << m;
            }
        }
    }
}

TEST(Birkhoff, HolonomyDefects) {
    EXPECT_EQ(holonomy_defect(1, 1), 1);
    EXPECT_EQ(holonomy_defect(2, -3), -3);
    EXPECT_EQ(compose_defects(holonomy_defect(3, 2), holonomy_defect(3, 2)), 4);
}

TEST(Birkhoff, IntersectionExamples) {
    EXPECT_EQ(homological_intersection(1, 0, 2, -1), 1);
    for (int n = 1; n < 6; ++n) EXPECT_EQ(homological_intersection(0, 1, n, 1), n);
    for (int n = 1; n < 6; ++n) {
        for (int m = -5; m <= 5; ++m) EXPECT_EQ(homological_intersection(n, m, n, m), 0);
    }
}

TEST(Birkhoff, IntersectionBilinearAndOdd) {
    for (int p1 = -3; p1 <= 3; ++p1) {
        for (int q1 = -3; q1 <= 3; ++q1) {
            for (int p2 = -2; p2 <= 2; ++p2) {
                EXPECT_EQ(homological_intersection(p1 + p2, q1, 3, 2),
                          homological_intersection(p1, q1, 3, 2) + homological_intersection(p2, 0, 3, 2));
            }
        }
    }
    for (int m = 1; m < 10; ++m) {
        EXPECT_EQ(homological_intersection(1, 0, 4, m), -homological_intersection(1, 0, 4, -m));
    }
}

TEST(Birkhoff, BlowdownBookkeeping) {
    const auto out = blowdown_bookkeeping({{1, 1, -1}, {2, 3, 1}});
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0].prongs, 2);
    EXPECT_FALSE(out[0].singular);
    EXPECT_EQ(out[1].prongs, 6);
    EXPECT_EQ(out[1].period, 2);
    EXPECT_TRUE(out[1].singular);
    EXPECT_TRUE(blowdown_bookkeeping({}).empty());
}

TEST(Birkhoff, EquivalenceVerdicts) {
    const std::vector<BirkhoffBoundaryData> a{{1, 1, -1}, {1, 2, 1}};
    auto b = a;
    b[1].m = 3;
    EXPECT_EQ(equivalence_check(a, a, true), Verdict::Positive);
    EXPECT_EQ(equivalence_check(a, b, true), Verdict::Negative);
    EXPECT_EQ(equivalence_check(a, a, false), Verdict::Inconclusive);
    EXPECT_THROW(equivalence_check(a, {a[0]}, true), DataError);
    for (bool token : {true, false}) EXPECT_EQ(equivalence_check(a, b, token), equivalence_check(b, a, token));
}

TEST(Birkhoff, SaddleBandInvariant) {
    EXPECT_NEAR(saddle_band_invariant(2, 4), 2.0, 1e-15);
    EXPECT_NEAR(saddle_band_invariant(std::exp(1.0), std::exp(1.0)), 1.0, 1e-15);
    EXPECT_TRUE(saddle_bands_compatible(2, 4, 3, 9));
    EXPECT_FALSE(saddle_bands_compatible(2, 4, 3, 8));
    EXPECT_NEAR(saddle_band_invariant(3, 8), 1.893, 1e-3);
    EXPECT_THROW(saddle_band_invariant(1.0, 2.0), DomainError);
}

TEST(Birkhoff, CombinatoricsTable) {
    const auto rows = combinatorics_table(4, 1);
    EXPECT_EQ(rows.size(), 8u);
    const auto single = combinatorics_table(1, 1);
    ASSERT_EQ(single.size(), 2u);
    for (const auto& r : single) {
        EXPECT_EQ(r.shift, 0);
        EXPECT_EQ(r.order, 1);
        EXPECT_FALSE(r.k.has_value());
    }
    std::size_t coprime = 0;
    for (int n = 1; n <= 7; ++n) {
        for (int m = 1; m <= 5; ++m) coprime += std::gcd(n, m) == 1 ? 2 : 0;
    }
    EXPECT_EQ(combinatorics_table(7, 5).size(), coprime);
}
