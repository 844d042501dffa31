#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "stegahp/bitplane.hpp"

namespace stegahp {

struct Chi2Options {
    /// Prefix fractions are 1/steps, 2/steps, ..., 1 of the row-major scan.
    int steps = 100;
    /// A value pair (2m, 2m+1) enters the statistic when h[2m] + h[2m+1] exceeds this.
    int min_pair_count = 4;
    double p_threshold = 0.95;
    double min_prefix = 0.05;
};

struct Chi2Report {
    std::vector<double> sample_fractions;
    std::vector<double> p_values;
    std::vector<double> statistics;
    std::vector<int> pairs_used;
    /// True when some prefix covering at least min_prefix of the pixels has p >= p_threshold.
    bool detected = false;
};

using Histogram = std::array<std::uint64_t, 256>;

struct PairsStatistic {
    double statistic = 0.0;
    int pairs = 0;
};

/// Sum over qualifying pairs of (h[2m] - e)^2 / e with e = (h[2m] + h[2m+1]) / 2.
PairsStatistic pairs_of_values_statistic(const Histogram& histogram, int min_pair_count = 4);

/// Upper tail of the chi-square distribution with max(pairs - 1, 1) degrees of
/// freedom; 1 when no pair qualified. Values near 1 indicate equalised pairs.
double embedding_probability(const PairsStatistic& stat);

Chi2Report chi_square_attack(const PixelGrid& grid, Channel channel = Channel::Blue, const Chi2Options& options = {});

}  // namespace stegahp
