#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "stegahp/bitplane.hpp"

namespace stegahp {
namespace {

PixelGrid random_grid(int width, int height, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> byte(0, 255);
    PixelGrid grid(width, height);
    for (Rgb& px : grid.pixels())
        px = {static_cast<std::uint8_t>(byte(rng)), static_cast<std::uint8_t>(byte(rng)),
              static_cast<std::uint8_t>(byte(rng))};
    return grid;
}

BitLayer layer_from(int width, int height, const std::vector<std::uint8_t>& bits) {
    return BitLayer(width, height, Channel::Blue, 0, bits);
}

TEST(PixelGrid, RejectsMismatchedPixelCount) {
    EXPECT_THROW(PixelGrid(3, 3, std::vector<Rgb>(8)), std::invalid_argument);
}

TEST(ExtractLayer, BitArithmetic) {
    PixelGrid grid(1, 1, Rgb{0, 0, 5});
    EXPECT_EQ(extract_layer(grid, Channel::Blue, 0).at(0, 0), 1);
    EXPECT_EQ(extract_layer(grid, Channel::Blue, 1).at(0, 0), 0);
    EXPECT_EQ(extract_layer(grid, Channel::Blue, 2).at(0, 0), 1);

    PixelGrid white(2, 2, Rgb{0, 0, 255});
    for (int layer = 0; layer < 8; ++layer) {
        const BitLayer bits = extract_layer(white, Channel::Blue, layer);
        for (const std::uint8_t bit : bits.bits()) EXPECT_EQ(bit, 1);
    }
}

TEST(ExtractLayer, SelectsChannel) {
    PixelGrid grid(1, 1, Rgb{1, 2, 4});
    EXPECT_EQ(extract_layer(grid, Channel::Red, 0).at(0, 0), 1);
    EXPECT_EQ(extract_layer(grid, Channel::Green, 1).at(0, 0), 1);
    EXPECT_EQ(extract_layer(grid, Channel::Blue, 2).at(0, 0), 1);
    EXPECT_EQ(extract_layer(grid, Channel::Blue, 0).at(0, 0), 0);
}

TEST(ExtractLayer, LayerOutOfRange) {
    PixelGrid grid(3, 3);
    EXPECT_THROW(extract_layer(grid, Channel::Blue, 8), std::invalid_argument);
    EXPECT_THROW(extract_layer(grid, Channel::Blue, -1), std::invalid_argument);
}

TEST(ExtractLayer, MetadataAndPurity) {
    const PixelGrid grid = random_grid(17, 11, 3);
    const BitLayer a = extract_layer(grid, Channel::Green, 5);
    const BitLayer b = extract_layer(grid, Channel::Green, 5);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.width(), 17);
    EXPECT_EQ(a.height(), 11);
    EXPECT_EQ(a.layer_index(), 5);
    EXPECT_EQ(a.channel(), Channel::Green);
    for (int r = 0; r < grid.height(); ++r)
        for (int c = 0; c < grid.width(); ++c) ASSERT_EQ(a.at(r, c), (grid.at(r, c).green >> 5) & 1);
}

TEST(ExtractLayer, RoundTripAllLayers) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const PixelGrid grid = random_grid(13 + static_cast<int>(seed), 7 + static_cast<int>(seed % 5), seed);
        for (const Channel ch : {Channel::Red, Channel::Green, Channel::Blue}) {
            std::vector<BitLayer> layers;
            for (int layer = 0; layer < 8; ++layer) layers.push_back(extract_layer(grid, ch, layer));
            const std::vector<std::uint8_t> bytes = compose_layers(layers);
            for (std::size_t i = 0; i < bytes.size(); ++i) ASSERT_EQ(bytes[i], grid.pixels()[i][ch]);
        }
    }
}

TEST(WindowAt, ConstantField) {
    const BitLayer zeros = layer_from(5, 4, std::vector<std::uint8_t>(20, 0));
    const Window3x3 w = window_at(zeros, 2, 3);
    EXPECT_EQ(w.center, 0);
    for (const auto bit : w.neighbors()) EXPECT_EQ(bit, 0);
}

TEST(WindowAt, Impulse) {
    std::vector<std::uint8_t> bits(25, 0);
    bits[2 * 5 + 2] = 1;
    const Window3x3 w = window_at(layer_from(5, 5, bits), 2, 2);
    EXPECT_EQ(w.center, 1);
    for (const auto bit : w.neighbors()) EXPECT_EQ(bit, 0);
}

TEST(WindowAt, Checkerboard) {
    std::vector<std::uint8_t> bits(36);
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) bits[static_cast<std::size_t>(r * 6 + c)] = static_cast<std::uint8_t>((r + c) % 2);
    const BitLayer layer = layer_from(6, 6, bits);
    for (int r = 1; r <= 4; ++r)
        for (int c = 1; c <= 4; ++c) {
            const Window3x3 w = window_at(layer, r, c);
            for (const auto s : w.sides) EXPECT_NE(s, w.center);
            for (const auto k : w.corners) EXPECT_EQ(k, w.center);
        }
}

TEST(WindowAt, Labelling) {
    // distinct pattern so every position can be told apart
    //   1 0 0
    //   0 0 1
    //   1 1 0  with the centre at (1,1)
    const std::vector<std::uint8_t> bits{1, 0, 0, 0, 0, 1, 1, 1, 0};
    const Window3x3 w = window_at(layer_from(3, 3, bits), 1, 1);
    EXPECT_EQ(w.sides[Window3x3::Up], 0);
    EXPECT_EQ(w.sides[Window3x3::Down], 1);
    EXPECT_EQ(w.sides[Window3x3::Left], 0);
    EXPECT_EQ(w.sides[Window3x3::Right], 1);
    EXPECT_EQ(w.corners[Window3x3::NorthWest], 1);
    EXPECT_EQ(w.corners[Window3x3::NorthEast], 0);
    EXPECT_EQ(w.corners[Window3x3::SouthWest], 1);
    EXPECT_EQ(w.corners[Window3x3::SouthEast], 0);
}

TEST(WindowAt, BorderIsOutOfRange) {
    const BitLayer layer = layer_from(4, 4, std::vector<std::uint8_t>(16, 0));
    EXPECT_THROW(window_at(layer, 0, 1), std::out_of_range);
    EXPECT_THROW(window_at(layer, 1, 0), std::out_of_range);
    EXPECT_THROW(window_at(layer, 3, 1), std::out_of_range);
    EXPECT_THROW(window_at(layer, 1, 3), std::out_of_range);
    EXPECT_NO_THROW(window_at(layer, 2, 2));
}

TEST(WindowAt, CentreMatchesLayer) {
    const PixelGrid grid = random_grid(20, 15, 9);
    const BitLayer layer = extract_layer(grid, Channel::Blue, 0);
    for (int r = 1; r < 14; ++r)
        for (int c = 1; c < 19; ++c) ASSERT_EQ(window_at(layer, r, c).center, layer.at(r, c));
}

TEST(Channel, Parsing) {
    EXPECT_EQ(parse_channel("blue"), Channel::Blue);
    EXPECT_EQ(parse_channel("R"), Channel::Red);
    EXPECT_EQ(parse_channel("Green"), Channel::Green);
    EXPECT_THROW(parse_channel("alpha"), std::invalid_argument);
}

}  // namespace
}  // namespace stegahp
