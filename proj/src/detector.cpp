#include "stegahp/detector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "stegahp/stego_lab.hpp"

namespace stegahp {

std::size_t SpoofMatrix::positives() const {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

LayerStack LayerStack::from(const PixelGrid& grid, Channel channel) {
    LayerStack stack;
    for (int layer = 0; layer < 4; ++layer) stack.layers[static_cast<std::size_t>(layer)] = extract_layer(grid, channel, layer);
    return stack;
}

PixelScores score_pixel(const LayerStack& stack, int row, int col, const CriterionWeights& criterion,
                        const LayerWeights& layer_weights) {
    const Window3x3 zero = window_at(stack.layers[0], row, col);
    const std::array<Window3x3, 3> upper{window_at(stack.layers[1], row, col),
                                         window_at(stack.layers[2], row, col),
                                         window_at(stack.layers[3], row, col)};
    return {zero_layer_scores(zero_layer_inputs(zero), criterion),
            upper_layer_scores(zero.center, upper, layer_weights)};
}

void detect_rows(const LayerStack& stack, const CriterionWeights& criterion, int row_begin, int row_end,
                 std::span<std::uint8_t> out) {
    const int width = stack.layers[0].width();
    const LayerWeights layer_weights;
    for (int r = row_begin; r < row_end; ++r) {
        for (int c = 1; c < width - 1; ++c) {
            const PixelScores s = score_pixel(stack, r, c, criterion, layer_weights);
            out[static_cast<std::size_t>(r) * static_cast<std::size_t>(width) + static_cast<std::size_t>(c)] =
                combine(decide(s.zero_layer), decide(s.upper_layers));
        }
    }
}

SpoofMatrix detect(const PixelGrid& grid, const DetectOptions& options) {
    if (grid.width() < 3 || grid.height() < 3)
        throw std::invalid_argument("detect: image must be at least 3x3 pixels");
    const CriterionWeights criterion = criterion_weights(options.params);
    const LayerStack stack = LayerStack::from(grid, options.channel);

    SpoofMatrix matrix;
    matrix.width = grid.width();
    matrix.height = grid.height();
    matrix.bits.assign(grid.size(), 0);

    const int interior_rows = grid.height() - 2;
    unsigned bands = options.bands == 0 ? std::max(1U, std::thread::hardware_concurrency()) : options.bands;
    bands = std::min(bands, static_cast<unsigned>(interior_rows));

    if (bands <= 1) {
        detect_rows(stack, criterion, 1, grid.height() - 1, matrix.bits);
        return matrix;
    }

    // Each band writes only its own rows; the shared layers provide the halo.
    std::vector<std::thread> workers;
    workers.reserve(bands);
    for (unsigned b = 0; b < bands; ++b) {
        const int begin = 1 + static_cast<int>(static_cast<long long>(interior_rows) * b / bands);
        const int end = 1 + static_cast<int>(static_cast<long long>(interior_rows) * (b + 1) / bands);
        workers.emplace_back([&stack, &criterion, &matrix, begin, end] {
            detect_rows(stack, criterion, begin, end, matrix.bits);
        });
    }
    for (std::thread& t : workers) t.join();
    return matrix;
}

SpoofMatrix detect(const PixelGrid& grid, const AhpParams& params) {
    DetectOptions options;
    options.params = params;
    return detect(grid, options);
}

std::vector<double> running_median(std::span<const double> values, int window) {
    if (window < 1 || window % 2 == 0) throw std::invalid_argument("running_median: window must be odd and positive");
    const int n = static_cast<int>(values.size());
    if (window == 1 || n == 0) return {values.begin(), values.end()};
    const int half = window / 2;
    std::vector<double> out(values.size());
    std::vector<double> scratch(static_cast<std::size_t>(window));
    for (int i = 0; i < n; ++i) {
        for (int j = -half; j <= half; ++j)
            scratch[static_cast<std::size_t>(j + half)] = values[static_cast<std::size_t>(std::clamp(i + j, 0, n - 1))];
        std::nth_element(scratch.begin(), scratch.begin() + half, scratch.end());
        out[static_cast<std::size_t>(i)] = scratch[static_cast<std::size_t>(half)];
    }
    return out;
}

namespace {

struct Run {
    int begin = 0;
    int end = -1;  // inclusive
    int length() const { return end - begin + 1; }
};

// Longest run strictly above the threshold; the earliest wins ties.
Run longest_run_above(std::span<const double> values, double threshold) {
    Run best;
    int start = -1;
    for (int i = 0; i <= static_cast<int>(values.size()); ++i) {
        const bool above = i < static_cast<int>(values.size()) && values[static_cast<std::size_t>(i)] > threshold;
        if (above && start < 0) start = i;
        if (!above && start >= 0) {
            if (i - start > best.length()) best = {start, i - 1};
            start = -1;
        }
    }
    return best;
}

BoundingBox full_frame(const SpoofMatrix& m) { return {0, 0, m.height - 1, m.width - 1}; }

}  // namespace

DensityReport density_report(const SpoofMatrix& matrix, const BoundingBox& box) {
    DensityReport report;
    report.positives_total = matrix.positives();

    std::size_t inside_cells = 0;
    std::size_t inside_pos = 0;
    std::size_t outside_cells = 0;
    std::size_t outside_pos = 0;
    for (int r = 1; r < matrix.height - 1; ++r) {
        for (int c = 1; c < matrix.width - 1; ++c) {
            const bool positive = matrix.at(r, c) != 0;
            if (box.contains(r, c)) {
                ++inside_cells;
                inside_pos += positive ? 1 : 0;
            } else {
                ++outside_cells;
                outside_pos += positive ? 1 : 0;
            }
        }
    }
    const std::size_t interior = inside_cells + outside_cells;
    report.global_density = interior > 0 ? static_cast<double>(inside_pos + outside_pos) / static_cast<double>(interior) : 0.0;
    report.inside_density = inside_cells > 0 ? static_cast<double>(inside_pos) / static_cast<double>(inside_cells) : 0.0;
    report.outside_density = outside_cells > 0 ? static_cast<double>(outside_pos) / static_cast<double>(outside_cells) : 0.0;
    if (outside_cells > 0) {
        const double floor = 1.0 / static_cast<double>(outside_cells);
        report.contrast = report.inside_density / std::max(report.outside_density, floor);
    } else {
        // Box covers the whole interior: nothing to contrast against.
        report.contrast = report.inside_density > 0.0 ? 1.0 : 0.0;
    }
    return report;
}

Localization localize(const SpoofMatrix& matrix, const LocalizeOptions& options) {
    if (!(options.tau_min > 0.0 && options.tau_min < 1.0))
        throw std::invalid_argument("localize: tau_min must be in (0, 1)");

    Localization result;
    result.box = full_frame(matrix);
    const int rows = matrix.height - 2;
    const int cols = matrix.width - 2;
    if (rows <= 0 || cols <= 0) {
        result.report = density_report(matrix, result.box);
        return result;
    }

    std::vector<double> row_density(static_cast<std::size_t>(rows), 0.0);
    std::vector<double> col_density(static_cast<std::size_t>(cols), 0.0);
    std::size_t total = 0;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (matrix.at(r + 1, c + 1) == 0) continue;
            row_density[static_cast<std::size_t>(r)] += 1.0;
            col_density[static_cast<std::size_t>(c)] += 1.0;
            ++total;
        }
    }
    for (double& d : row_density) d /= cols;
    for (double& d : col_density) d /= rows;
    const double global = static_cast<double>(total) / (static_cast<double>(rows) * cols);

    result.threshold = std::max(2.0 * global, options.tau_min);
    const std::vector<double> row_profile = running_median(row_density, options.median_window);
    const std::vector<double> col_profile = running_median(col_density, options.median_window);
    const Run row_run = longest_run_above(row_profile, result.threshold);
    const Run col_run = longest_run_above(col_profile, result.threshold);

    if (row_run.length() > 0 && col_run.length() > 0) {
        result.box = {row_run.begin + 1, col_run.begin + 1, row_run.end + 1, col_run.end + 1};
        result.insert_found = true;
    }
    result.report = density_report(matrix, result.box);
    return result;
}

TruthMetrics compare_truth(const SpoofMatrix& matrix, const EmbedRecord& truth, const LocalizeOptions& options) {
    if (matrix.width != truth.width || matrix.height != truth.height || matrix.bits.size() != truth.flipped_mask.size())
        throw std::invalid_argument("compare_truth: matrix and ground truth dimensions differ");

    TruthMetrics m;
    for (std::size_t i = 0; i < matrix.bits.size(); ++i) {
        const bool predicted = matrix.bits[i] != 0;
        const bool actual = truth.flipped_mask[i] != 0;
        if (predicted && actual) ++m.true_positives;
        else if (predicted) ++m.false_positives;
        else if (actual) ++m.false_negatives;
    }
    const std::size_t predicted = m.true_positives + m.false_positives;
    const std::size_t actual = m.true_positives + m.false_negatives;
    // Empty predictions are vacuously precise only when there was nothing to find.
    m.precision = predicted > 0 ? static_cast<double>(m.true_positives) / static_cast<double>(predicted)
                                : (actual == 0 ? 1.0 : 0.0);
    m.recall = actual > 0 ? static_cast<double>(m.true_positives) / static_cast<double>(actual) : 1.0;
    m.f1 = (m.precision + m.recall) > 0.0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;

    m.localization = localize(matrix, options);
    const BoundingBox& found = m.localization.box;
    const BoundingBox& region = truth.region;
    m.edge_errors = {std::abs(found.top - region.top), std::abs(found.left - region.left),
                     std::abs(found.bottom - region.bottom), std::abs(found.right - region.right)};
    m.edge_error_max = *std::max_element(m.edge_errors.begin(), m.edge_errors.end());
    return m;
}

}  // namespace stegahp
