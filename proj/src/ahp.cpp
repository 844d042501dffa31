#include "stegahp/ahp.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stegahp {

void AhpParams::validate() const {
    if (!(std::isfinite(n) && n > 0.0) || !(std::isfinite(k) && k > 0.0))
        throw std::invalid_argument("AHP importance ratios n and k must be positive and finite");
}

ComparisonMatrix comparison_matrix(const AhpParams& params) {
    params.validate();
    const double n = params.n;
    const double k = params.k;
    return {{{1.0, n, n * k}, {1.0 / n, 1.0, k}, {1.0 / (n * k), 1.0 / k, 1.0}}};
}

CriterionWeights criterion_weights(const AhpParams& params) {
    params.validate();
    const double nk = params.n * params.k;
    const double total = nk + params.k + 1.0;
    return {nk / total, params.k / total, 1.0 / total};
}

int side_match_count(const Window3x3& window, std::uint8_t reference) {
    int count = 0;
    for (const std::uint8_t bit : window.sides) count += bit == reference ? 1 : 0;
    return count;
}

int corner_match_count(const Window3x3& window, std::uint8_t reference) {
    int count = 0;
    for (const std::uint8_t bit : window.corners) count += bit == reference ? 1 : 0;
    return count;
}

double mean_deviation(std::uint8_t reference, std::span<const std::uint8_t> neighborhood) {
    if (neighborhood.empty()) throw std::invalid_argument("mean_deviation: empty neighbourhood");
    const unsigned ones = std::accumulate(neighborhood.begin(), neighborhood.end(), 0U);
    const double mean = static_cast<double>(ones) / static_cast<double>(neighborhood.size());
    return std::abs(static_cast<double>(reference) - mean);
}

CriterionInputs zero_layer_inputs(const Window3x3& window) {
    const auto around = window.neighbors();
    return {side_match_count(window), corner_match_count(window), mean_deviation(window.center, around)};
}

Scores zero_layer_scores(const CriterionInputs& inputs, const CriterionWeights& weights) {
    // p favours "spoofed", q favours "untouched"; p_i + q_i = 1 per criterion.
    const double p_sides = (4.0 - inputs.side_matches) / 4.0;
    const double q_sides = inputs.side_matches / 4.0;
    const double p_corners = (4.0 - inputs.corner_matches) / 4.0;
    const double q_corners = inputs.corner_matches / 4.0;
    const double p_dev = inputs.deviation;
    const double q_dev = 1.0 - inputs.deviation;

    return {weights.sides * p_sides + weights.corners * p_corners + weights.deviation * p_dev,
            weights.sides * q_sides + weights.corners * q_corners + weights.deviation * q_dev};
}

Scores zero_layer_scores(const CriterionInputs& inputs, const AhpParams& params) {
    return zero_layer_scores(inputs, criterion_weights(params));
}

Scores upper_layer_scores(std::uint8_t zero_bit, std::span<const Window3x3, 3> windows,
                          const LayerWeights& weights) {
    Scores total{0.0, 0.0};
    for (std::size_t layer = 0; layer < 3; ++layer) {
        const Window3x3& w = windows[layer];
        const int x = side_match_count(w, zero_bit);
        const int y = corner_match_count(w, zero_bit);
        const auto bits = w.all();
        const double dc = mean_deviation(zero_bit, bits);

        const auto& s = weights.criterion;
        const double yes = s[0] * (4.0 - x) / 4.0 + s[1] * (4.0 - y) / 4.0 + s[2] * dc;
        const double no = s[0] * x / 4.0 + s[1] * y / 4.0 + s[2] * (1.0 - dc);
        total.p_yes += weights.layer[layer] * yes;
        total.p_no += weights.layer[layer] * no;
    }
    return total;
}

Decision decide(const Scores& scores) {
    return scores.p_yes - scores.p_no > kDecisionTieTolerance ? Decision::Yes : Decision::No;
}

std::uint8_t combine(Decision zero_layer, Decision upper_layers) {
    return (zero_layer == Decision::Yes || upper_layers == Decision::Yes) ? 1 : 0;
}

}  // namespace stegahp
