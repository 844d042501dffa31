#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "stegahp/bitplane.hpp"

namespace stegahp {

/// Pairwise importance ratios of the zero-layer criteria: side agreement is
/// `n` times as important as corner agreement, which is `k` times as important
/// as the deviation from the neighbourhood mean.
struct AhpParams {
    double n = 2.0;
    double k = 2.0;

    /// Throws std::invalid_argument unless n > 0 and k > 0 (and both finite).
    void validate() const;
};

struct CriterionWeights {
    double sides = 0.0;
    double corners = 0.0;
    double deviation = 0.0;
};

/// Weights of the upper-layer hierarchy. Layer 1 counts twice layer 2, which
/// counts twice layer 3; the three criteria inside a layer count equally.
struct LayerWeights {
    std::array<double, 3> layer{4.0 / 7.0, 2.0 / 7.0, 1.0 / 7.0};
    std::array<double, 3> criterion{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
};

/// Criterion measurements for one analysed bit.
/// side_matches/corner_matches in [0, 4], deviation in [0, 1].
struct CriterionInputs {
    int side_matches = 4;
    int corner_matches = 4;
    double deviation = 0.0;
};

/// Aggregate weights of the two alternatives: spoofed (yes) and untouched (no).
struct Scores {
    double p_yes = 0.0;
    double p_no = 1.0;
};

enum class Decision { No, Yes };

/// Consistent pairwise comparison matrix over (sides, corners, deviation).
using ComparisonMatrix = std::array<std::array<double, 3>, 3>;

ComparisonMatrix comparison_matrix(const AhpParams& params);

/// (nk, k, 1) / (nk + k + 1). Throws std::invalid_argument for n <= 0 or k <= 0.
CriterionWeights criterion_weights(const AhpParams& params);

int side_match_count(const Window3x3& window, std::uint8_t reference);
inline int side_match_count(const Window3x3& window) { return side_match_count(window, window.center); }

int corner_match_count(const Window3x3& window, std::uint8_t reference);
inline int corner_match_count(const Window3x3& window) { return corner_match_count(window, window.center); }

/// |reference - mean(neighborhood)|. Throws std::invalid_argument on an empty neighbourhood.
double mean_deviation(std::uint8_t reference, std::span<const std::uint8_t> neighborhood);

/// Criterion inputs of the zero-layer hierarchy: matches against the centre and
/// deviation from the mean of the eight surrounding bits.
CriterionInputs zero_layer_inputs(const Window3x3& window);

Scores zero_layer_scores(const CriterionInputs& inputs, const CriterionWeights& weights);
Scores zero_layer_scores(const CriterionInputs& inputs, const AhpParams& params);

/// Upper-layer hierarchy. Each window (layers 1, 2, 3 at the same position) is
/// compared against the analysed zero-layer bit, not its own centre; the
/// deviation uses all nine window bits.
Scores upper_layer_scores(std::uint8_t zero_bit, std::span<const Window3x3, 3> windows,
                          const LayerWeights& weights = {});

/// Yes only when p_yes strictly exceeds p_no. Differences within
/// kDecisionTieTolerance count as ties and resolve to No.
Decision decide(const Scores& scores);
inline constexpr double kDecisionTieTolerance = 1e-12;

/// Cell value of the spoof matrix: 1 when either hierarchy says Yes.
std::uint8_t combine(Decision zero_layer, Decision upper_layers);

}  // namespace stegahp
