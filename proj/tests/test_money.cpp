#include "sfcna/money.hpp"

#include <gtest/gtest.h>

#include <limits>

using sfcna::Money;
using sfcna::Ratio;

TEST(Money, ParsesAndRendersFixedPoint)
{
    EXPECT_EQ(Money::parse("105771").cents(), 10577100);
    EXPECT_EQ(Money::parse("-4219").str(), "-4219.00");
    EXPECT_EQ(Money::parse("0.5").cents(), 50);
    EXPECT_EQ(Money::parse("12.34").str(), "12.34");
    EXPECT_EQ(Money::parse("-0.01").str(), "-0.01");
    EXPECT_EQ(Money{}.str(), "0.00");
    EXPECT_EQ(Money::parse(" 7 ").cents(), 700);
}

TEST(Money, RejectsMalformedText)
{
    for (const char* bad : {"", "-", "1.234", "1e3", "1,000", "12a", "."})
        EXPECT_THROW(Money::parse(bad), std::invalid_argument) << bad;
}

TEST(Money, ArithmeticIsOverflowChecked)
{
    const auto big = Money::from_cents(std::numeric_limits<std::int64_t>::max());
    EXPECT_THROW(big + Money::from_cents(1), std::overflow_error);
    EXPECT_THROW(-big - Money::from_cents(2), std::overflow_error);
    EXPECT_THROW(big * 2, std::overflow_error);
    EXPECT_EQ(Money::units(3) * 4, Money::units(12));
}

TEST(Ratio, ExactFractions)
{
    EXPECT_EQ(Ratio::of(1, 4).raw(), 250'000'000'000);
    EXPECT_EQ(Ratio::of(Money::units(78677), Money::units(79149)), Ratio::of(78677, 79149));
    EXPECT_EQ(Ratio::parse("1.1").raw(), 1'100'000'000'000);
    EXPECT_EQ(Ratio::parse("0.98").str(), "0.98");
    EXPECT_THROW(Ratio::of(1, 0), std::domain_error);
    EXPECT_THROW(Ratio::parse("0.0000000000001"), std::invalid_argument);
}

TEST(Ratio, ApplyRoundsHalfAwayFromZero)
{
    EXPECT_EQ(Ratio::parse("0.5").apply(Money::from_cents(1)).cents(), 1);
    EXPECT_EQ(Ratio::parse("0.5").apply(Money::from_cents(-1)).cents(), -1);
    EXPECT_EQ(Ratio::parse("1.02").apply(Money::units(486261)), Money::parse("495986.22"));
}

TEST(Apportion, PartsSumToPoolWithLargestRemainder)
{
    const std::vector<Ratio> thirds{Ratio::of(1, 3), Ratio::of(1, 3), Ratio::from_raw(Ratio::kScale - 2 * Ratio::of(1, 3).raw())};
    auto parts = sfcna::apportion(Money::from_cents(100), thirds);
    ASSERT_EQ(parts.size(), 3u);
    EXPECT_EQ(parts[0].cents() + parts[1].cents() + parts[2].cents(), 100);
    EXPECT_EQ(parts[0].cents(), 33);
    EXPECT_EQ(parts[2].cents(), 34);

    const std::vector<Ratio> halves{Ratio::parse("0.5"), Ratio::parse("0.5")};
    parts = sfcna::apportion(Money::from_cents(1), halves);
    EXPECT_EQ(parts[0].cents(), 1); // tie goes to the lower index
    EXPECT_EQ(parts[1].cents(), 0);
}

TEST(Apportion, RejectsSharesNotSummingToOne)
{
    std::vector<Ratio> shares{Ratio::parse("0.5"), Ratio::parse("0.4")};
    EXPECT_THROW(sfcna::apportion(Money::units(1), shares), std::invalid_argument);
    EXPECT_THROW(sfcna::apportion(Money::units(1), std::vector<Ratio>{}), std::invalid_argument);
}

TEST(Apportion, NegativePoolIsSplitToo)
{
    std::vector<Ratio> shares{Ratio::parse("0.25"), Ratio::parse("0.75")};
    auto parts = sfcna::apportion(Money::units(-4), shares);
    EXPECT_EQ(parts[0], Money::units(-1));
    EXPECT_EQ(parts[1], Money::units(-3));
}

TEST(Normalize, SumsToExactlyOne)
{
    std::vector<Ratio> w{Ratio::of(1, 3), Ratio::of(1, 7), Ratio::of(5, 11)};
    auto n = sfcna::normalize(w);
    std::int64_t total = 0;
    for (auto r : n)
        total += r.raw();
    EXPECT_EQ(total, Ratio::kScale);

    auto uniform = sfcna::normalize(std::vector<Ratio>(3, Ratio::zero()));
    total = 0;
    for (auto r : uniform)
        total += r.raw();
    EXPECT_EQ(total, Ratio::kScale);
}

TEST(Mean, OfRatios)
{
    std::vector<Ratio> v{Ratio::parse("0.2"), Ratio::parse("0.4")};
    EXPECT_EQ(sfcna::mean(v), Ratio::parse("0.3"));
}
