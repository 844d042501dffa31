#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "stegahp/ahp.hpp"
#include "stegahp/bitplane.hpp"

namespace stegahp {

enum class BorderPolicy { UndecidedZero };

/// Per-pixel spoofing decisions (1 = substituted LSB suspected).
struct SpoofMatrix {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;
    BorderPolicy border_policy = BorderPolicy::UndecidedZero;

    std::uint8_t at(int row, int col) const {
        return bits[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                    static_cast<std::size_t>(col)];
    }
    std::size_t positives() const;

    friend bool operator==(const SpoofMatrix&, const SpoofMatrix&) = default;
};

/// Inclusive pixel rectangle.
struct BoundingBox {
    int top = 0;
    int left = 0;
    int bottom = 0;
    int right = 0;

    int height() const { return bottom - top + 1; }
    int width() const { return right - left + 1; }
    long long area() const { return static_cast<long long>(height()) * width(); }
    bool contains(int row, int col) const { return row >= top && row <= bottom && col >= left && col <= right; }

    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct DensityReport {
    double inside_density = 0.0;
    double outside_density = 0.0;
    /// inside / max(outside, 1 / outside_cells).
    double contrast = 0.0;
    std::size_t positives_total = 0;
    double global_density = 0.0;
};

struct DetectOptions {
    AhpParams params{};
    Channel channel = Channel::Blue;
    /// Number of horizontal bands scanned concurrently; 0 picks hardware concurrency.
    unsigned bands = 1;
};

/// Both hierarchy scores for one interior pixel.
struct PixelScores {
    Scores zero_layer;
    Scores upper_layers;
};

/// Layers 0..3 of one channel, shared read-only by the scan workers.
struct LayerStack {
    std::array<BitLayer, 4> layers;

    static LayerStack from(const PixelGrid& grid, Channel channel);
};

PixelScores score_pixel(const LayerStack& stack, int row, int col, const CriterionWeights& criterion,
                        const LayerWeights& layer_weights = {});

/// Full scan. Throws std::invalid_argument for grids smaller than 3x3.
SpoofMatrix detect(const PixelGrid& grid, const DetectOptions& options = {});
SpoofMatrix detect(const PixelGrid& grid, const AhpParams& params);

/// Sequential scan of interior rows [row_begin, row_end) into `out`, which
/// must already be sized for the full image. Reads rows row_begin-1 .. row_end.
void detect_rows(const LayerStack& stack, const CriterionWeights& criterion, int row_begin, int row_end,
                 std::span<std::uint8_t> out);

struct LocalizeOptions {
    double tau_min = 0.05;
    /// Width of the running median applied to the row/column density profiles
    /// before thresholding; 1 disables smoothing. Must be odd.
    int median_window = 9;
};

struct Localization {
    BoundingBox box;
    DensityReport report;
    bool insert_found = false;
    double threshold = 0.0;
};

Localization localize(const SpoofMatrix& matrix, const LocalizeOptions& options = {});

/// Densities of a given box against the rest of the interior.
DensityReport density_report(const SpoofMatrix& matrix, const BoundingBox& box);

/// Running median with edge replication; window must be odd and >= 1.
std::vector<double> running_median(std::span<const double> values, int window);

struct EmbedRecord;

struct TruthMetrics {
    std::size_t true_positives = 0;
    std::size_t false_positives = 0;
    std::size_t false_negatives = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    Localization localization;
    /// |found - truth| for top, left, bottom, right.
    std::array<int, 4> edge_errors{};
    int edge_error_max = 0;
};

/// Confusion counts against the flipped-cell mask plus localization edge errors.
/// Throws std::invalid_argument when dimensions differ.
TruthMetrics compare_truth(const SpoofMatrix& matrix, const EmbedRecord& truth,
                           const LocalizeOptions& options = {});

}  // namespace stegahp
