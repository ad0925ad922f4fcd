#include <gtest/gtest.h>

#include "collatz/cfunc.hpp"
#include "collatz/core.hpp"
#include "oracle.hpp"

using namespace collatz;

TEST(CRecursive, BaseValues) {
    EXPECT_EQ(c_recursive(1), 0u);
    EXPECT_EQ(c_recursive(2), 1u);
    EXPECT_EQ(c_recursive(3), 1u);
    EXPECT_EQ(c_recursive(4), 0u);
    EXPECT_EQ(c_recursive(8), 1u);
    EXPECT_EQ(c_recursive(16), 0u);
    EXPECT_EQ(c_recursive(121), 0u);
    EXPECT_THROW((void)c_recursive(0), InvalidInput);
}

TEST(CClosed, Values) {
    EXPECT_EQ(c_closed(8), 1u);
    EXPECT_EQ(c_closed(121), 0u);
    EXPECT_EQ(c_closed(16), 0u);
    for (u128 m = 0; m <= 100; ++m) EXPECT_EQ(c_closed(4 * m + 3), 1u) << to_string(m);
    EXPECT_THROW((void)c_closed(0), InvalidInput);
}

TEST(CFunc, LiteralRecursionAgreesWithOracleTable) {
    const auto table = oracle::c_table(10'000);
    for (std::uint64_t n = 1; n <= 10'000; ++n) {
        ASSERT_EQ(c_recursive_literal(n), table[n]) << n;
        ASSERT_EQ(c_recursive(n), table[n]) << n;
        ASSERT_EQ(c_closed(n), table[n]) << n;
    }
}

TEST(CFunc, FourCaseTable) {
    EXPECT_EQ(c_from_case(0, 1), 0u);
    EXPECT_EQ(c_from_case(0, 3), 1u);
    EXPECT_EQ(c_from_case(1, 1), 1u);
    EXPECT_EQ(c_from_case(1, 3), 0u);
}

TEST(CFunc, Prop1Identities) {
    EXPECT_TRUE(c_prop1_checks(1));
    EXPECT_TRUE(c_prop1_checks(6));
    for (u128 n = 1; n <= 100'000; ++n) ASSERT_TRUE(c_prop1_checks(n)) << to_string(n);
}

TEST(CFunc, Prop2) {
    EXPECT_TRUE(c_prop2_check(12));
    EXPECT_EQ(c_recursive(12), c_recursive(3));
    EXPECT_EQ(c_recursive(12), 1u);
    EXPECT_TRUE(c_prop2_check(6));
    EXPECT_EQ(c_recursive(6), 0u);
    for (u128 n = 1; n <= 100'000; ++n) ASSERT_TRUE(c_prop2_check(n)) << to_string(n);
}

TEST(CFunc, OddResiduesReduceModFour) {
    for (u128 n = 1; n <= 1'000'000; n += 2) ASSERT_EQ(c_recursive(n), c_recursive(n & 3)) << to_string(n);
}

TEST(CFunc, PeriodFourOnOdds) {
    for (u128 n = 1; n <= 100'000; n += 2) ASSERT_EQ(c_closed(n + 4), c_closed(n));
}

TEST(CFunc, RandomWideEquivalence) {
    oracle::Gen gen(77);
    for (int trial = 0; trial < 50'000; ++trial) {
        const u128 n = gen.u128_bits(static_cast<unsigned>(gen.u64(1, 128))) | 1u;
        const u128 shifted = n << gen.u64(0, 10);
        if (shifted == 0) continue;
        ASSERT_EQ(c_closed(shifted), c_recursive(shifted)) << to_string(shifted);
    }
    EXPECT_EQ(c_closed(kU128Max), c_recursive(kU128Max));
    EXPECT_EQ(c_closed(u128{1} << 127), c_recursive(u128{1} << 127));
}
