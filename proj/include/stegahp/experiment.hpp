#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stegahp/chi2.hpp"
#include "stegahp/detector.hpp"
#include "stegahp/reports.hpp"
#include "stegahp/stego_lab.hpp"

namespace stegahp {

enum class ContainerKind { Gradient, Shapes, Photo };

std::string_view to_string(ContainerKind kind);
ContainerKind parse_container_kind(std::string_view name);

/// Derives an independent stream seed from a base seed and a stream tag.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

PixelGrid make_container(ContainerKind kind, int width, int height, std::uint64_t seed);

/// Repeats `bits` until `length` bits are produced. Empty input gives empty output.
BitSequence cycle_bits(const BitSequence& bits, std::size_t length);

/// One run of the embed-then-detect protocol.
struct TrialConfig {
    ContainerKind kind = ContainerKind::Gradient;
    int width = 640;
    int height = 480;
    std::uint64_t seed = 1;
    double flip_rate = 0.09;
    AhpParams params{};
    LocalizeOptions localize{};
    unsigned bands = 1;
    /// Container to use instead of a generated one (photographs).
    std::optional<PixelGrid> container;
    /// Payload repeated to fill the region; random bits when absent.
    std::optional<BitSequence> payload;
    bool run_chi2 = true;
};

struct TrialResult {
    PixelGrid cover;
    PixelGrid stego;
    EmbedRecord record;
    SpoofMatrix cover_matrix;
    SpoofMatrix stego_matrix;
    Localization cover_localization;
    TruthMetrics metrics;
    /// Contrast of the true region against the rest of the interior.
    DensityReport truth_density;
    Chi2Report cover_chi2;
    Chi2Report stego_chi2;
    double detect_seconds = 0.0;
};

TrialResult run_trial(const TrialConfig& config);

/// Machine-readable trial summary (no timing, so it is reproducible).
Json trial_summary(const TrialResult& result);

struct ExperimentConfig {
    std::filesystem::path output_dir;
    std::uint64_t seed = 1;
    double flip_rate = 0.09;
    AhpParams params{};
    LocalizeOptions localize{};
    std::optional<std::filesystem::path> photo;
    std::optional<BitSequence> payload;
};

/// Runs the protocol on the gradient and shapes containers (and an optional
/// photograph), writing images, masks, ground truth and summary.json into the
/// output directory. Returns the summary. Throws IoError if the directory
/// cannot be written.
Json run_experiment(const ExperimentConfig& config);

struct CalibrationConfig {
    std::vector<double> n_values{1.0, 1.5, 2.0, 3.0, 5.0};
    std::vector<double> k_values{1.0, 1.5, 2.0, 3.0, 5.0};
    std::vector<ContainerKind> containers{ContainerKind::Gradient, ContainerKind::Shapes};
    int trials_per_container = 2;
    std::uint64_t seed = 1;
    double flip_rate = 0.09;
    int width = 640;
    int height = 480;
    LocalizeOptions localize{};
};

struct CalibrationRow {
    AhpParams params;
    double mean_f1 = 0.0;
    double mean_edge_error = 0.0;
    int max_edge_error = 0;
    double found_rate = 0.0;
};

/// Rows ranked by mean F1 (descending), then mean edge error, then (n, k).
struct CalibrationResult {
    std::vector<CalibrationRow> rows;
    const CalibrationRow& recommended() const { return rows.front(); }
};

CalibrationResult calibrate(const CalibrationConfig& config);
std::string calibration_csv(const CalibrationResult& result);

}  // namespace stegahp
