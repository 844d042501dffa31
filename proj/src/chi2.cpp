#include "stegahp/chi2.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <stdexcept>

namespace stegahp {

PairsStatistic pairs_of_values_statistic(const Histogram& histogram, int min_pair_count) {
    PairsStatistic out;
    for (std::size_t m = 0; m < 128; ++m) {
        const auto even = static_cast<double>(histogram[2 * m]);
        const auto odd = static_cast<double>(histogram[2 * m + 1]);
        if (even + odd <= min_pair_count) continue;
        const double expected = (even + odd) / 2.0;
        out.statistic += (even - expected) * (even - expected) / expected;
        ++out.pairs;
    }
    return out;
}

double embedding_probability(const PairsStatistic& stat) {
    if (stat.pairs == 0 || stat.statistic <= 0.0) return 1.0;
    const boost::math::chi_squared dist(static_cast<double>(std::max(stat.pairs - 1, 1)));
    return std::clamp(boost::math::cdf(boost::math::complement(dist, stat.statistic)), 0.0, 1.0);
}

Chi2Report chi_square_attack(const PixelGrid& grid, Channel channel, const Chi2Options& options) {
    if (grid.empty()) throw std::invalid_argument("chi_square_attack: empty image");
    if (options.steps < 1) throw std::invalid_argument("chi_square_attack: steps must be positive");

    Chi2Report report;
    const auto pixels = grid.pixels();
    const std::size_t total = pixels.size();
    const auto steps = static_cast<std::size_t>(options.steps);

    Histogram histogram{};
    std::size_t scanned = 0;
    for (std::size_t i = 1; i <= steps; ++i) {
        const std::size_t prefix = (total * i + steps - 1) / steps;
        for (; scanned < prefix; ++scanned) ++histogram[pixels[scanned][channel]];

        const PairsStatistic stat = pairs_of_values_statistic(histogram, options.min_pair_count);
        const double fraction = static_cast<double>(i) / static_cast<double>(steps);
        const double p = embedding_probability(stat);
        report.sample_fractions.push_back(fraction);
        report.statistics.push_back(stat.statistic);
        report.pairs_used.push_back(stat.pairs);
        report.p_values.push_back(p);
        if (fraction + 1e-12 >= options.min_prefix && p >= options.p_threshold) report.detected = true;
    }
    return report;
}

}  // namespace stegahp
