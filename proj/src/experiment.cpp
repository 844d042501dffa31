#include "stegahp/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "stegahp/image_io.hpp"

namespace stegahp {

std::string_view to_string(ContainerKind kind) {
    switch (kind) {
        case ContainerKind::Gradient: return "gradient";
        case ContainerKind::Shapes: return "shapes";
        case ContainerKind::Photo: return "photo";
    }
    return "gradient";
}

ContainerKind parse_container_kind(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "gradient") return ContainerKind::Gradient;
    if (lower == "shapes") return ContainerKind::Shapes;
    if (lower == "photo") return ContainerKind::Photo;
    throw std::invalid_argument("unknown container kind '" + std::string(name) + "'");
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    // splitmix64 finaliser over the combined value
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

PixelGrid make_container(ContainerKind kind, int width, int height, std::uint64_t seed) {
    switch (kind) {
        case ContainerKind::Gradient: return gradient_image(width, height);
        case ContainerKind::Shapes: return shapes_image(width, height, seed);
        case ContainerKind::Photo: break;
    }
    throw std::invalid_argument("photo containers must be supplied, not generated");
}

BitSequence cycle_bits(const BitSequence& bits, std::size_t length) {
    BitSequence out;
    if (bits.empty()) return out;
    out.reserve(length);
    for (std::size_t i = 0; i < length; ++i) out.push_back(bits[i % bits.size()]);
    return out;
}

TrialResult run_trial(const TrialConfig& config) {
    TrialResult result;
    result.cover = config.container ? *config.container
                                    : make_container(config.kind, config.width, config.height, derive_seed(config.seed, 1));

    const BoundingBox region =
        place_region(result.cover.width(), result.cover.height(), config.flip_rate, derive_seed(config.seed, 2));
    const auto capacity = static_cast<std::size_t>(region.area());
    const BitSequence payload = config.payload ? cycle_bits(*config.payload, capacity)
                                               : random_payload(capacity, derive_seed(config.seed, 3));

    EmbedResult embedded = embed_lsb(result.cover, payload, region);
    result.stego = std::move(embedded.stego);
    result.record = std::move(embedded.record);

    DetectOptions options;
    options.params = config.params;
    options.bands = config.bands;
    result.cover_matrix = detect(result.cover, options);

    const auto start = std::chrono::steady_clock::now();
    result.stego_matrix = detect(result.stego, options);
    result.detect_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    result.cover_localization = localize(result.cover_matrix, config.localize);
    result.metrics = compare_truth(result.stego_matrix, result.record, config.localize);
    result.truth_density = density_report(result.stego_matrix, region);
    if (config.run_chi2) {
        result.cover_chi2 = chi_square_attack(result.cover);
        result.stego_chi2 = chi_square_attack(result.stego);
    }
    return result;
}

namespace {

double max_p_value(const Chi2Report& report) {
    return report.p_values.empty() ? 0.0 : *std::max_element(report.p_values.begin(), report.p_values.end());
}

}  // namespace

Json trial_summary(const TrialResult& r) {
    return Json{{"width", r.cover.width()},
                {"height", r.cover.height()},
                {"region", to_json(r.record.region)},
                {"change_rate", r.record.change_rate},
                {"payload_length", r.record.payload_bits.size()},
                {"insert_found", r.metrics.localization.insert_found},
                {"bounding_box", to_json(r.metrics.localization.box)},
                {"edge_errors",
                 Json{{"top", r.metrics.edge_errors[0]},
                      {"left", r.metrics.edge_errors[1]},
                      {"bottom", r.metrics.edge_errors[2]},
                      {"right", r.metrics.edge_errors[3]}}},
                {"edge_error_max", r.metrics.edge_error_max},
                {"precision", r.metrics.precision},
                {"recall", r.metrics.recall},
                {"f1", r.metrics.f1},
                {"densities", to_json(r.metrics.localization.report)},
                {"truth_region_densities", to_json(r.truth_density)},
                {"cover", Json{{"insert_found", r.cover_localization.insert_found},
                               {"densities", to_json(r.cover_localization.report)}}},
                {"chi2", Json{{"cover_detected", r.cover_chi2.detected},
                              {"detected", r.stego_chi2.detected},
                              {"cover_max_p_value", max_p_value(r.cover_chi2)},
                              {"max_p_value", max_p_value(r.stego_chi2)}}}};
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw IoError("cannot create output directory '" + dir.string() + "'");
}

}  // namespace

Json run_experiment(const ExperimentConfig& config) {
    ensure_directory(config.output_dir);

    std::vector<TrialConfig> trials;
    for (const ContainerKind kind : {ContainerKind::Gradient, ContainerKind::Shapes}) {
        TrialConfig t;
        t.kind = kind;
        trials.push_back(t);
    }
    if (config.photo) {
        TrialConfig t;
        t.kind = ContainerKind::Photo;
        t.container = load_image(*config.photo);
        trials.push_back(std::move(t));
    }

    Json containers = Json::object();
    for (TrialConfig& t : trials) {
        t.seed = config.seed;
        t.flip_rate = config.flip_rate;
        t.params = config.params;
        t.localize = config.localize;
        t.payload = config.payload;
        const TrialResult r = run_trial(t);

        const std::filesystem::path dir = config.output_dir / std::string(to_string(t.kind));
        ensure_directory(dir);
        save_png(r.cover, dir / "cover.png");
        save_png(r.stego, dir / "stego.png");
        save_mask_png(r.cover_matrix.bits, r.cover_matrix.width, r.cover_matrix.height, dir / "cover_matrix.png");
        save_mask_png(r.stego_matrix.bits, r.stego_matrix.width, r.stego_matrix.height, dir / "stego_matrix.png");
        write_text(dir / "embed.json", to_json(r.record).dump() + "\n");
        containers[std::string(to_string(t.kind))] = trial_summary(r);
    }

    Json summary{{"seed", config.seed},
                 {"flip_rate_target", config.flip_rate},
                 {"params", to_json(config.params)},
                 {"tau_min", config.localize.tau_min},
                 {"median_window", config.localize.median_window},
                 {"containers", containers}};
    write_text(config.output_dir / "summary.json", summary.dump(2) + "\n");
    return summary;
}

CalibrationResult calibrate(const CalibrationConfig& config) {
    if (config.n_values.empty() || config.k_values.empty()) throw std::invalid_argument("calibrate: empty lattice");
    if (config.trials_per_container < 1) throw std::invalid_argument("calibrate: need at least one trial");

    struct Sample {
        PixelGrid stego;
        EmbedRecord record;
    };
    std::vector<Sample> corpus;
    for (const ContainerKind kind : config.containers) {
        for (int i = 0; i < config.trials_per_container; ++i) {
            const std::uint64_t seed = derive_seed(config.seed, 100 + static_cast<std::uint64_t>(corpus.size()));
            const PixelGrid cover = make_container(kind, config.width, config.height, derive_seed(seed, 1));
            const BoundingBox region = place_region(cover.width(), cover.height(), config.flip_rate, derive_seed(seed, 2));
            EmbedResult e = embed_lsb(cover, random_payload(static_cast<std::size_t>(region.area()), derive_seed(seed, 3)), region);
            corpus.push_back({std::move(e.stego), std::move(e.record)});
        }
    }

    CalibrationResult result;
    for (const double n : config.n_values) {
        for (const double k : config.k_values) {
            CalibrationRow row;
            row.params = {n, k};
            row.params.validate();
            int found = 0;
            for (const Sample& s : corpus) {
                const TruthMetrics m = compare_truth(detect(s.stego, row.params), s.record, config.localize);
                row.mean_f1 += m.f1;
                row.mean_edge_error += m.edge_error_max;
                row.max_edge_error = std::max(row.max_edge_error, m.edge_error_max);
                found += m.localization.insert_found ? 1 : 0;
            }
            const auto count = static_cast<double>(corpus.size());
            row.mean_f1 /= count;
            row.mean_edge_error /= count;
            row.found_rate = found / count;
            result.rows.push_back(row);
        }
    }
    std::stable_sort(result.rows.begin(), result.rows.end(), [](const CalibrationRow& a, const CalibrationRow& b) {
        return std::tie(b.mean_f1, a.mean_edge_error, a.params.n, a.params.k) <
               std::tie(a.mean_f1, b.mean_edge_error, b.params.n, b.params.k);
    });
    return result;
}

std::string calibration_csv(const CalibrationResult& result) {
    std::ostringstream out;
    out << "rank,n,k,mean_f1,mean_edge_error,max_edge_error,found_rate\n" << std::setprecision(10);
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const CalibrationRow& r = result.rows[i];
        out << i + 1 << ',' << r.params.n << ',' << r.params.k << ',' << r.mean_f1 << ',' << r.mean_edge_error << ','
            << r.max_edge_error << ',' << r.found_rate << '\n';
    }
    return out.str();
}

}  // namespace stegahp
