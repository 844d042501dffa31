// Command-line front end: generate, embed, detect, chi2, calibrate, experiment.
//
// Exit codes: 0 success, 1 usage error, 2 IO or format error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stegahp/chi2.hpp"
#include "stegahp/detector.hpp"
#include "stegahp/experiment.hpp"
#include "stegahp/image_io.hpp"
#include "stegahp/reports.hpp"
#include "stegahp/stego_lab.hpp"

namespace fs = std::filesystem;
using namespace stegahp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string input;
    std::string output_dir = ".";
    double n = 2.0;
    double k = 2.0;
    double tau_min = 0.05;
    int median_window = 9;
    std::uint64_t seed = 1;
    std::string channel = "blue";
    std::string region;
    std::string payload_file;
    double fill_rate = 0.09;
    unsigned threads = 1;
    bool pgm = false;
    bool bmp = false;
    bool cycle = false;
    std::string kind = "gradient";
    int width = 640;
    int height = 480;
    std::string truth;
    int trials = 2;
    std::string n_values = "1,1.5,2,3,5";
    std::string k_values = "1,1.5,2,3,5";
    std::string containers = "gradient,shapes";
};

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir.string() + "'");
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

BitSequence read_payload_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open payload file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return text_to_bits(buffer.str());
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw UsageError("not a number: '" + item + "'");
        }
    }
    if (values.empty()) throw UsageError("empty value list");
    return values;
}

BoundingBox parse_region(const std::string& text) {
    const std::vector<double> v = parse_list(text);
    if (v.size() != 4) throw UsageError("--region expects x,y,w,h");
    const int x = static_cast<int>(v[0]);
    const int y = static_cast<int>(v[1]);
    const int w = static_cast<int>(v[2]);
    const int h = static_cast<int>(v[3]);
    if (w <= 0 || h <= 0) throw UsageError("--region width and height must be positive");
    return {y, x, y + h - 1, x + w - 1};
}

AhpParams params_of(const RunConfig& cfg) {
    AhpParams p{cfg.n, cfg.k};
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return p;
}

LocalizeOptions localize_of(const RunConfig& cfg) {
    if (!(cfg.tau_min > 0.0 && cfg.tau_min < 1.0)) throw UsageError("--tau-min must be in (0, 1)");
    if (cfg.median_window < 1 || cfg.median_window % 2 == 0) throw UsageError("--median-window must be odd and positive");
    return {cfg.tau_min, cfg.median_window};
}

int cmd_generate(const RunConfig& cfg) {
    const ContainerKind kind = parse_container_kind(cfg.kind);
    if (kind == ContainerKind::Photo) throw UsageError("generate supports gradient and shapes");
    const PixelGrid grid = make_container(kind, cfg.width, cfg.height, cfg.seed);
    const fs::path dir(cfg.output_dir);
    ensure_dir(dir);
    const fs::path png = dir / (cfg.kind + ".png");
    save_png(grid, png);
    std::cout << png.string() << '\n';
    if (cfg.bmp) {
        const fs::path bmp = dir / (cfg.kind + ".bmp");
        save_bmp(grid, bmp);
        std::cout << bmp.string() << '\n';
    }
    return kExitOk;
}

int cmd_embed(const RunConfig& cfg) {
    const PixelGrid cover = load_image(cfg.input);
    const BoundingBox region = cfg.region.empty() ? place_region(cover.width(), cover.height(), cfg.fill_rate, cfg.seed)
                                                  : parse_region(cfg.region);
    const auto capacity = static_cast<std::size_t>(region.area());
    BitSequence payload;
    if (cfg.payload_file.empty()) {
        payload = random_payload(capacity, cfg.seed);
    } else {
        payload = read_payload_file(cfg.payload_file);
        if (cfg.cycle) payload = cycle_bits(payload, capacity);
    }
    const EmbedResult result = embed_lsb(cover, payload, region);

    const fs::path dir(cfg.output_dir);
    ensure_dir(dir);
    save_png(result.stego, dir / "stego.png");
    write_text(dir / "embed.json", to_json(result.record).dump() + "\n");
    std::cout << "embedded " << payload.size() << " bits, change rate " << result.record.change_rate << '\n';
    return kExitOk;
}

int cmd_detect(const RunConfig& cfg) {
    const PixelGrid grid = load_image(cfg.input);
    if (grid.width() < 3 || grid.height() < 3) throw FormatError("image must be at least 3x3 pixels");
    DetectOptions options;
    options.params = params_of(cfg);
    options.channel = parse_channel(cfg.channel);
    options.bands = cfg.threads;
    const LocalizeOptions loc_options = localize_of(cfg);

    const auto start = std::chrono::steady_clock::now();
    const SpoofMatrix matrix = detect(grid, options);
    const double detect_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const Localization loc = localize(matrix, loc_options);

    const fs::path dir(cfg.output_dir);
    ensure_dir(dir);
    save_mask_png(matrix.bits, matrix.width, matrix.height, dir / "matrix.png");
    if (cfg.pgm) save_mask_pgm(matrix.bits, matrix.width, matrix.height, dir / "matrix.pgm");

    Json report{{"input", cfg.input},
                {"width", matrix.width},
                {"height", matrix.height},
                {"insert_found", loc.insert_found},
                {"bounding_box", to_json(loc.box)},
                {"densities", to_json(loc.report)},
                {"contrast", loc.report.contrast},
                {"threshold", loc.threshold},
                {"params", Json{{"n", options.params.n},
                                {"k", options.params.k},
                                {"tau_min", loc_options.tau_min},
                                {"median_window", loc_options.median_window},
                                {"channel", std::string(to_string(options.channel))}}},
                {"timing", Json{{"detect_ms", detect_ms}}}};
    if (!cfg.truth.empty()) {
        std::ifstream in(cfg.truth);
        if (!in) throw IoError("cannot open truth file '" + cfg.truth + "'");
        Json truth_json;
        try {
            in >> truth_json;
        } catch (const Json::exception& e) {
            throw FormatError("malformed truth file '" + cfg.truth + "': " + e.what());
        }
        report["truth"] = to_json(compare_truth(matrix, embed_record_from_json(truth_json), loc_options));
    }
    write_text(dir / "report.json", report.dump(2) + "\n");

    std::cout << "insert_found=" << (loc.insert_found ? "true" : "false") << " box=(" << loc.box.top << ','
              << loc.box.left << ',' << loc.box.bottom << ',' << loc.box.right << ") contrast=" << loc.report.contrast
              << '\n';
    return kExitOk;
}

int cmd_chi2(const RunConfig& cfg) {
    const PixelGrid grid = load_image(cfg.input);
    const Chi2Report report = chi_square_attack(grid, parse_channel(cfg.channel));
    const fs::path dir(cfg.output_dir);
    ensure_dir(dir);
    write_text(dir / "chi2.json", to_json(report).dump(2) + "\n");
    write_text(dir / "chi2.csv", chi2_csv(report));
    std::cout << "detected=" << (report.detected ? "true" : "false") << '\n';
    return kExitOk;
}

int cmd_calibrate(const RunConfig& cfg) {
    CalibrationConfig config;
    config.n_values = parse_list(cfg.n_values);
    config.k_values = parse_list(cfg.k_values);
    for (const double v : config.n_values)
        if (!(v > 0.0)) throw UsageError("--n-values must be positive");
    for (const double v : config.k_values)
        if (!(v > 0.0)) throw UsageError("--k-values must be positive");
    config.containers.clear();
    std::stringstream kinds(cfg.containers);
    for (std::string name; std::getline(kinds, name, ',');) {
        const ContainerKind kind = parse_container_kind(name);
        if (kind == ContainerKind::Photo) throw UsageError("calibrate supports gradient and shapes containers");
        config.containers.push_back(kind);
    }
    if (config.containers.empty()) throw UsageError("--containers is empty");
    config.trials_per_container = cfg.trials;
    config.seed = cfg.seed;
    config.flip_rate = cfg.fill_rate;
    config.localize = localize_of(cfg);

    const CalibrationResult result = calibrate(config);
    const fs::path dir(cfg.output_dir);
    ensure_dir(dir);
    write_text(dir / "calibration.csv", calibration_csv(result));
    const CalibrationRow& best = result.recommended();
    const Json recommendation{{"recommended", to_json(best.params)},
                              {"mean_f1", best.mean_f1},
                              {"mean_edge_error", best.mean_edge_error},
                              {"max_edge_error", best.max_edge_error},
                              {"found_rate", best.found_rate}};
    write_text(dir / "recommendation.json", recommendation.dump(2) + "\n");
    std::cout << "recommended n=" << best.params.n << " k=" << best.params.k << " mean_f1=" << best.mean_f1 << '\n';
    return kExitOk;
}

int cmd_experiment(const RunConfig& cfg) {
    ExperimentConfig config;
    config.output_dir = cfg.output_dir;
    config.seed = cfg.seed;
    config.flip_rate = cfg.fill_rate;
    config.params = params_of(cfg);
    config.localize = localize_of(cfg);
    if (!cfg.input.empty()) config.photo = cfg.input;
    if (!cfg.payload_file.empty()) config.payload = read_payload_file(cfg.payload_file);
    const Json summary = run_experiment(config);
    for (const auto& [name, entry] : summary.at("containers").items()) {
        std::cout << name << ": insert_found=" << entry.at("insert_found") << " edge_error_max="
                  << entry.at("edge_error_max") << " chi2_detected=" << entry.at("chi2").at("detected") << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LSB steganalysis with per-pixel hierarchy decisions over blue bit layers"};
    app.require_subcommand(1);
    RunConfig cfg;

    const auto add_params = [&cfg](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "Importance of side agreement over corner agreement")->check(CLI::PositiveNumber);
        sub->add_option("--k", cfg.k, "Importance of corner agreement over mean deviation")->check(CLI::PositiveNumber);
        sub->add_option("--tau-min", cfg.tau_min, "Lower bound of the localization threshold");
        sub->add_option("--median-window", cfg.median_window, "Median width for density profiles (odd)");
    };

    auto* generate = app.add_subcommand("generate", "Write a synthetic container image");
    generate->add_option("--kind", cfg.kind, "gradient or shapes")->check(CLI::IsMember({"gradient", "shapes"}));
    generate->add_option("--width", cfg.width)->check(CLI::Range(3, 1 << 15));
    generate->add_option("--height", cfg.height)->check(CLI::Range(3, 1 << 15));
    generate->add_option("--seed", cfg.seed);
    generate->add_option("--output-dir", cfg.output_dir);
    generate->add_flag("--bmp", cfg.bmp, "Also write a BMP copy");

    auto* embed = app.add_subcommand("embed", "Embed a payload into blue LSBs of a rectangle");
    embed->add_option("--input", cfg.input, "Cover image (PNG or BMP)")->required();
    embed->add_option("--output-dir", cfg.output_dir);
    embed->add_option("--region", cfg.region, "x,y,w,h (column, row, width, height)");
    embed->add_option("--fill-rate", cfg.fill_rate, "Target fraction of flipped pixels when no region is given")
        ->check(CLI::Range(1e-6, 0.5));
    embed->add_option("--seed", cfg.seed);
    embed->add_option("--payload-file", cfg.payload_file, "Payload bytes (random bits when omitted)");
    embed->add_flag("--cycle", cfg.cycle, "Repeat the payload file to fill the region");

    auto* detect_cmd = app.add_subcommand("detect", "Build the spoof matrix and localize the insert");
    detect_cmd->add_option("--input", cfg.input)->required();
    detect_cmd->add_option("--output-dir", cfg.output_dir);
    detect_cmd->add_option("--channel", cfg.channel);
    detect_cmd->add_option("--threads", cfg.threads, "Horizontal bands scanned in parallel (0 = all cores)");
    detect_cmd->add_option("--truth", cfg.truth, "embed.json to score against");
    detect_cmd->add_flag("--pgm", cfg.pgm, "Also write the matrix as PGM");
    add_params(detect_cmd);

    auto* chi2 = app.add_subcommand("chi2", "Run the chi-square pairs-of-values attack");
    chi2->add_option("--input", cfg.input)->required();
    chi2->add_option("--output-dir", cfg.output_dir);
    chi2->add_option("--channel", cfg.channel);

    auto* calibrate_cmd = app.add_subcommand("calibrate", "Sweep (n, k) on a seeded synthetic corpus");
    calibrate_cmd->add_option("--output-dir", cfg.output_dir);
    calibrate_cmd->add_option("--seed", cfg.seed);
    calibrate_cmd->add_option("--trials", cfg.trials, "Images per container kind")->check(CLI::PositiveNumber);
    calibrate_cmd->add_option("--n-values", cfg.n_values);
    calibrate_cmd->add_option("--k-values", cfg.k_values);
    calibrate_cmd->add_option("--containers", cfg.containers, "Comma-separated synthetic container kinds");
    calibrate_cmd->add_option("--fill-rate", cfg.fill_rate)->check(CLI::Range(1e-6, 0.5));
    calibrate_cmd->add_option("--tau-min", cfg.tau_min);
    calibrate_cmd->add_option("--median-window", cfg.median_window);

    auto* experiment = app.add_subcommand("experiment", "Reproduce the gradient/shapes embedding experiment");
    experiment->add_option("--output-dir", cfg.output_dir);
    experiment->add_option("--seed", cfg.seed);
    experiment->add_option("--fill-rate", cfg.fill_rate)->check(CLI::Range(1e-6, 0.5));
    experiment->add_option("--input", cfg.input, "Optional photograph to use as a third container");
    experiment->add_option("--payload-file", cfg.payload_file, "Text payload, repeated to fill the region");
    add_params(experiment);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*generate) return cmd_generate(cfg);
        if (*embed) return cmd_embed(cfg);
        if (*detect_cmd) return cmd_detect(cfg);
        if (*chi2) return cmd_chi2(cfg);
        if (*calibrate_cmd) return cmd_calibrate(cfg);
        if (*experiment) return cmd_experiment(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitUsage;
}
