#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stegahp/image_io.hpp"
#include "stegahp/stego_lab.hpp"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               (std::string("stegahp_cli_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int run(const std::string& args) const {
        const std::string cmd = std::string("\"") + STEGAHP_CLI_PATH + "\" " + args + " > \"" +
                                (dir_ / "stdout.txt").string() + "\" 2> \"" + (dir_ / "stderr.txt").string() + "\"";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string out(const std::string& sub = "") const { return "\"" + (dir_ / sub).string() + "\""; }

    static Json read_json(const fs::path& p) {
        std::ifstream in(p);
        return Json::parse(in);
    }

    static std::string read_text(const fs::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
};

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(run(""), 1);
    EXPECT_EQ(run("frobnicate"), 1);
    EXPECT_EQ(run("detect"), 1);
    EXPECT_EQ(run("detect --input x.png --n -1"), 1);
    EXPECT_EQ(run("calibrate --n-values 1,abc --output-dir " + out("c")), 1);
    EXPECT_EQ(run("calibrate --containers photo --output-dir " + out("c")), 1);
    EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, MissingInputIsIoError) {
    EXPECT_EQ(run("detect --input " + out("missing.png") + " --output-dir " + out("d")), 2);
    EXPECT_EQ(run("chi2 --input " + out("missing.png") + " --output-dir " + out("d")), 2);
    EXPECT_EQ(run("embed --input " + out("missing.png") + " --output-dir " + out("d")), 2);
}

TEST_F(Cli, UnsupportedFormatIsIoError) {
    std::ofstream(dir_ / "bad.png") << "definitely not an image";
    EXPECT_EQ(run("detect --input " + out("bad.png") + " --output-dir " + out("d")), 2);
}

TEST_F(Cli, OversizedRegionIsUsageError) {
    ASSERT_EQ(run("generate --kind gradient --width 32 --height 32 --output-dir " + out()), 0);
    EXPECT_EQ(run("embed --input " + out("gradient.png") + " --region 30,30,10,10 --output-dir " + out("e")), 1);
    std::ofstream(dir_ / "payload.txt") << std::string(100, 'x');
    EXPECT_EQ(run("embed --input " + out("gradient.png") + " --region 0,0,4,4 --payload-file " + out("payload.txt") +
                  " --output-dir " + out("e")),
              1);
}

TEST_F(Cli, CleanGradientHasNoInsert) {
    ASSERT_EQ(run("generate --kind gradient --output-dir " + out()), 0);
    ASSERT_EQ(run("detect --input " + out("gradient.png") + " --output-dir " + out("d") + " --pgm"), 0);
    const Json report = read_json(dir_ / "d" / "report.json");
    EXPECT_FALSE(report["insert_found"].get<bool>());
    EXPECT_LE(report["contrast"].get<double>(), 1.0);
    EXPECT_TRUE(report.contains("timing"));
    EXPECT_TRUE(fs::exists(dir_ / "d" / "matrix.png"));
    EXPECT_TRUE(fs::exists(dir_ / "d" / "matrix.pgm"));
    const stegahp::PixelGrid matrix = stegahp::load_image(dir_ / "d" / "matrix.png");
    EXPECT_EQ(matrix.width(), 640);
    EXPECT_EQ(matrix.height(), 480);
}

TEST_F(Cli, ShapesEmbedIsLocalised) {
    ASSERT_EQ(run("generate --kind shapes --seed 7 --output-dir " + out()), 0);
    ASSERT_EQ(run("embed --input " + out("shapes.png") + " --fill-rate 0.09 --seed 3 --output-dir " + out("e")), 0);
    const Json embed = read_json(dir_ / "e" / "embed.json");
    const double rate = embed["change_rate"].get<double>();
    EXPECT_GE(rate, 0.08);
    EXPECT_LE(rate, 0.10);

    ASSERT_EQ(run("detect --input " + out("e/stego.png") + " --truth " + out("e/embed.json") + " --threads 3 --output-dir " +
                  out("d")),
              0);
    const Json report = read_json(dir_ / "d" / "report.json");
    EXPECT_TRUE(report["insert_found"].get<bool>());
    EXPECT_LE(report["truth"]["edge_error_max"].get<int>(), 5);
    EXPECT_GE(report["contrast"].get<double>(), 3.0);
}

TEST_F(Cli, ExplicitRegionAndTextPayload) {
    ASSERT_EQ(run("generate --kind gradient --width 64 --height 48 --bmp --output-dir " + out()), 0);
    ASSERT_TRUE(fs::exists(dir_ / "gradient.bmp"));
    std::ofstream(dir_ / "msg.txt") << "hi";
    ASSERT_EQ(run("embed --input " + out("gradient.bmp") + " --region 10,5,8,4 --payload-file " + out("msg.txt") +
                  " --output-dir " + out("e")),
              0);
    const Json embed = read_json(dir_ / "e" / "embed.json");
    EXPECT_EQ(embed["region"]["top"].get<int>(), 5);
    EXPECT_EQ(embed["region"]["left"].get<int>(), 10);
    EXPECT_EQ(embed["region"]["bottom"].get<int>(), 8);
    EXPECT_EQ(embed["region"]["right"].get<int>(), 17);
    EXPECT_EQ(embed["payload_bits"].get<std::string>(), "0110100001101001");

    const stegahp::PixelGrid stego = stegahp::load_image(dir_ / "e" / "stego.png");
    EXPECT_EQ(stegahp::bits_to_text(stegahp::extract_lsb(stego, {5, 10, 8, 17}, 16)), "hi");
}

TEST_F(Cli, Chi2Outputs) {
    ASSERT_EQ(run("generate --kind gradient --output-dir " + out()), 0);
    ASSERT_EQ(run("chi2 --input " + out("gradient.png") + " --output-dir " + out("c")), 0);
    const Json report = read_json(dir_ / "c" / "chi2.json");
    EXPECT_FALSE(report["detected"].get<bool>());
    EXPECT_EQ(report["p_values"].size(), 100U);
    const std::string csv = read_text(dir_ / "c" / "chi2.csv");
    EXPECT_EQ(csv.rfind("fraction,p_value\n", 0), 0U);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 101);
}

TEST_F(Cli, CalibrateSweepsLattice) {
    ASSERT_EQ(run("calibrate --trials 1 --containers shapes --seed 5 --output-dir " + out("cal")), 0);
    std::ifstream csv(dir_ / "cal" / "calibration.csv");
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "rank,n,k,mean_f1,mean_edge_error,max_edge_error,found_rate");
    std::vector<double> f1;
    while (std::getline(csv, line)) {
        std::stringstream row(line);
        std::string cell;
        for (int i = 0; i < 4; ++i) std::getline(row, cell, ',');
        f1.push_back(std::stod(cell));
    }
    ASSERT_EQ(f1.size(), 25U);
    EXPECT_TRUE(std::is_sorted(f1.rbegin(), f1.rend()));

    const Json rec = read_json(dir_ / "cal" / "recommendation.json");
    EXPECT_NEAR(rec["mean_f1"].get<double>(), f1.front(), 1e-8);
    EXPECT_LE(rec["max_edge_error"].get<int>(), 5);
}

TEST_F(Cli, ExperimentIsDeterministic) {
    ASSERT_EQ(run("experiment --seed 11 --output-dir " + out("a")), 0);
    ASSERT_EQ(run("experiment --seed 11 --output-dir " + out("b")), 0);
    EXPECT_EQ(read_text(dir_ / "a" / "summary.json"), read_text(dir_ / "b" / "summary.json"));
    EXPECT_EQ(read_text(dir_ / "a" / "shapes" / "embed.json"), read_text(dir_ / "b" / "shapes" / "embed.json"));

    const Json summary = read_json(dir_ / "a" / "summary.json");
    for (const char* kind : {"gradient", "shapes"}) {
        const Json& c = summary["containers"][kind];
        EXPECT_FALSE(c["chi2"]["detected"].get<bool>()) << kind;
        EXPECT_GE(c["change_rate"].get<double>(), 0.08) << kind;
        EXPECT_LE(c["change_rate"].get<double>(), 0.10) << kind;
        EXPECT_FALSE(c["cover"]["insert_found"].get<bool>()) << kind;
        for (const char* file : {"cover.png", "stego.png", "cover_matrix.png", "stego_matrix.png", "embed.json"})
            EXPECT_TRUE(fs::exists(dir_ / "a" / kind / file)) << kind << '/' << file;
    }
    EXPECT_TRUE(summary["containers"]["shapes"]["insert_found"].get<bool>());
    EXPECT_LE(summary["containers"]["shapes"]["edge_error_max"].get<int>(), 5);
}

TEST_F(Cli, ExperimentWithPhotoContainer) {
    stegahp::save_png(stegahp::shapes_image(160, 120, 2), dir_ / "photo.png");
    ASSERT_EQ(run("experiment --input " + out("photo.png") + " --output-dir " + out("x")), 0);
    const Json summary = read_json(dir_ / "x" / "summary.json");
    EXPECT_TRUE(summary["containers"].contains("photo"));
    EXPECT_EQ(summary["containers"]["photo"]["width"].get<int>(), 160);
}

}  // namespace
