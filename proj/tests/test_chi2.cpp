#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "stegahp/chi2.hpp"
#include "stegahp/stego_lab.hpp"

namespace stegahp {
namespace {

PixelGrid with_random_lsbs(PixelGrid grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (Rgb& px : grid.pixels()) px.blue = static_cast<std::uint8_t>((px.blue & 0xFE) | (rng() >> 63));
    return grid;
}

TEST(PairsStatistic, BalancedHistogram) {
    Histogram h{};
    for (int m = 0; m < 128; ++m) h[2 * m] = h[2 * m + 1] = 50;
    const PairsStatistic s = pairs_of_values_statistic(h);
    EXPECT_EQ(s.pairs, 128);
    EXPECT_DOUBLE_EQ(s.statistic, 0.0);
    EXPECT_DOUBLE_EQ(embedding_probability(s), 1.0);
}

TEST(PairsStatistic, HandComputed) {
    Histogram h{};
    h[10] = 10;  // e = 5, (10 - 5)^2 / 5 = 5
    h[20] = 6;
    h[21] = 2;   // e = 4, (6 - 4)^2 / 4 = 1
    h[30] = 3;   // only 4 in the pair, skipped
    h[31] = 1;
    const PairsStatistic s = pairs_of_values_statistic(h);
    EXPECT_EQ(s.pairs, 2);
    EXPECT_DOUBLE_EQ(s.statistic, 6.0);
}

TEST(PairsStatistic, UnbalancedGivesSmallProbability) {
    Histogram h{};
    for (int m = 0; m < 100; ++m) h[2 * m] = 100;
    EXPECT_LT(embedding_probability(pairs_of_values_statistic(h)), 1e-6);
}

TEST(PairsStatistic, NoPairsMeansProbabilityOne) {
    const Histogram h{};
    const PairsStatistic s = pairs_of_values_statistic(h);
    EXPECT_EQ(s.pairs, 0);
    EXPECT_DOUBLE_EQ(embedding_probability(s), 1.0);
}

TEST(PairsStatistic, PermutingWithinPairsKeepsStatistic) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        Histogram h{};
        for (auto& v : h) v = rng() % 40;
        Histogram swapped = h;
        for (int m = 0; m < 128; ++m)
            if (rng() % 2) std::swap(swapped[2 * m], swapped[2 * m + 1]);
        const PairsStatistic a = pairs_of_values_statistic(h);
        const PairsStatistic b = pairs_of_values_statistic(swapped);
        ASSERT_EQ(a.pairs, b.pairs);
        ASSERT_NEAR(a.statistic, b.statistic, 1e-9);
    }
}

TEST(PairsStatistic, ProbabilityInUnitInterval) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        Histogram h{};
        for (auto& v : h) v = rng() % 1000;
        const double p = embedding_probability(pairs_of_values_statistic(h));
        ASSERT_GE(p, 0.0);
        ASSERT_LE(p, 1.0);
    }
}

TEST(Chi2Attack, ReportShape) {
    const Chi2Report r = chi_square_attack(gradient_image(64, 48));
    ASSERT_EQ(r.sample_fractions.size(), 100U);
    ASSERT_EQ(r.p_values.size(), 100U);
    ASSERT_EQ(r.statistics.size(), 100U);
    ASSERT_EQ(r.pairs_used.size(), 100U);
    EXPECT_DOUBLE_EQ(r.sample_fractions.front(), 0.01);
    EXPECT_DOUBLE_EQ(r.sample_fractions.back(), 1.0);
    EXPECT_TRUE(std::is_sorted(r.sample_fractions.begin(), r.sample_fractions.end()));
}

TEST(Chi2Attack, CleanGradientNotDetected) {
    EXPECT_FALSE(chi_square_attack(gradient_image(640, 480)).detected);
}

TEST(Chi2Attack, FullyRandomisedLsbsDetected) {
    const Chi2Report r = chi_square_attack(with_random_lsbs(gradient_image(640, 480), 1));
    EXPECT_TRUE(r.detected);
    EXPECT_GE(r.p_values.back(), 0.95);
}

TEST(Chi2Attack, LocalisedNinePercentEmbedNotDetected) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const PixelGrid cover = gradient_image(640, 480);
        const BoundingBox region = place_region(640, 480, 0.09, seed);
        const EmbedResult e = embed_lsb(cover, random_payload(static_cast<std::size_t>(region.area()), seed), region);
        EXPECT_FALSE(chi_square_attack(e.stego).detected) << "seed " << seed;
    }
}

TEST(Chi2Attack, ShortPrefixesAreIgnored) {
    // Only the first 2% of rows are randomised; later prefixes dilute it.
    PixelGrid grid = gradient_image(640, 480);
    const PixelGrid noisy = with_random_lsbs(grid, 4);
    for (int r = 0; r < 9; ++r)
        for (int c = 0; c < 640; ++c) grid.at(r, c) = noisy.at(r, c);
    Chi2Options options;
    const Chi2Report r = chi_square_attack(grid, Channel::Blue, options);
    for (std::size_t i = 0; i < r.p_values.size(); ++i)
        if (r.sample_fractions[i] >= options.min_prefix) EXPECT_LT(r.p_values[i], options.p_threshold);
    EXPECT_FALSE(r.detected);
}

TEST(Chi2Attack, RejectsBadOptions) {
    Chi2Options options;
    options.steps = 0;
    EXPECT_THROW(chi_square_attack(gradient_image(8, 8), Channel::Blue, options), std::invalid_argument);
}

}  // namespace
}  // namespace stegahp
