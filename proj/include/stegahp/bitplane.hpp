#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stegahp {

enum class Channel { Red, Green, Blue };

std::string_view to_string(Channel channel);
/// Accepts "red", "green", "blue" (also "r", "g", "b"). Throws std::invalid_argument.
Channel parse_channel(std::string_view name);

struct Rgb {
    std::uint8_t red = 0;
    std::uint8_t green = 0;
    std::uint8_t blue = 0;

    std::uint8_t operator[](Channel channel) const;
    std::uint8_t& operator[](Channel channel);

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// H x W raster of 8-bit RGB triples, row-major, addressed as (row, col).
class PixelGrid {
public:
    PixelGrid() = default;
    PixelGrid(int width, int height, Rgb fill = {});
    PixelGrid(int width, int height, std::vector<Rgb> pixels);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return pixels_.size(); }
    bool empty() const { return pixels_.empty(); }

    const Rgb& at(int row, int col) const { return pixels_[index(row, col)]; }
    Rgb& at(int row, int col) { return pixels_[index(row, col)]; }

    std::span<const Rgb> pixels() const { return pixels_; }
    std::span<Rgb> pixels() { return pixels_; }

    friend bool operator==(const PixelGrid&, const PixelGrid&) = default;

private:
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(col);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<Rgb> pixels_;
};

/// Binary plane of one channel: bit(row, col) == (channel_value >> layer_index) & 1.
class BitLayer {
public:
    BitLayer() = default;
    BitLayer(int width, int height, Channel channel, int layer_index, std::vector<std::uint8_t> bits);

    int width() const { return width_; }
    int height() const { return height_; }
    Channel channel() const { return channel_; }
    int layer_index() const { return layer_index_; }

    std::uint8_t at(int row, int col) const {
        return bits_[static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
                     static_cast<std::size_t>(col)];
    }
    std::span<const std::uint8_t> bits() const { return bits_; }
    std::span<const std::uint8_t> row(int r) const {
        return std::span<const std::uint8_t>(bits_).subspan(
            static_cast<std::size_t>(r) * static_cast<std::size_t>(width_),
            static_cast<std::size_t>(width_));
    }

    friend bool operator==(const BitLayer&, const BitLayer&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    Channel channel_ = Channel::Blue;
    int layer_index_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// The 3x3 neighbourhood of one bit.
struct Window3x3 {
    enum Side { Up = 0, Down = 1, Left = 2, Right = 3 };
    enum Corner { NorthWest = 0, NorthEast = 1, SouthWest = 2, SouthEast = 3 };

    std::uint8_t center = 0;
    std::array<std::uint8_t, 4> sides{};
    std::array<std::uint8_t, 4> corners{};

    /// Sides followed by corners; the center is excluded.
    std::array<std::uint8_t, 8> neighbors() const;
    /// All nine bits, center first.
    std::array<std::uint8_t, 9> all() const;

    friend bool operator==(const Window3x3&, const Window3x3&) = default;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

BitLayer extract_layer(const PixelGrid& grid, Channel channel, int layer);

/// Window centred at an interior pixel; border coordinates throw std::out_of_range.
Window3x3 window_at(const BitLayer& layer, int row, int col);

/// Inverse of extract_layer over all eight layers of one channel.
std::vector<std::uint8_t> compose_layers(std::span<const BitLayer> layers);

}  // namespace stegahp
