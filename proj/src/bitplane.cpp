#include "stegahp/bitplane.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace stegahp {

std::string_view to_string(Channel channel) {
    switch (channel) {
        case Channel::Red: return "red";
        case Channel::Green: return "green";
        case Channel::Blue: return "blue";
    }
    return "blue";
}

Channel parse_channel(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "red" || lower == "r") return Channel::Red;
    if (lower == "green" || lower == "g") return Channel::Green;
    if (lower == "blue" || lower == "b") return Channel::Blue;
    throw std::invalid_argument("unknown channel '" + std::string(name) + "'");
}

std::uint8_t Rgb::operator[](Channel channel) const {
    switch (channel) {
        case Channel::Red: return red;
        case Channel::Green: return green;
        case Channel::Blue: return blue;
    }
    return blue;
}

std::uint8_t& Rgb::operator[](Channel channel) {
    switch (channel) {
        case Channel::Red: return red;
        case Channel::Green: return green;
        case Channel::Blue: return blue;
    }
    return blue;
}

PixelGrid::PixelGrid(int width, int height, Rgb fill)
    : width_(width), height_(height) {
    if (width < 0 || height < 0) throw std::invalid_argument("negative grid dimension");
    pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

PixelGrid::PixelGrid(int width, int height, std::vector<Rgb> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (width < 0 || height < 0) throw std::invalid_argument("negative grid dimension");
    if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw std::invalid_argument("pixel count does not match width * height");
}

BitLayer::BitLayer(int width, int height, Channel channel, int layer_index,
                   std::vector<std::uint8_t> bits)
    : width_(width), height_(height), channel_(channel), layer_index_(layer_index),
      bits_(std::move(bits)) {
    if (layer_index < 0 || layer_index > 7) throw std::invalid_argument("layer index must be in [0, 7]");
    if (bits_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw std::invalid_argument("bit count does not match width * height");
}

std::array<std::uint8_t, 8> Window3x3::neighbors() const {
    return {sides[0], sides[1], sides[2], sides[3], corners[0], corners[1], corners[2], corners[3]};
}

std::array<std::uint8_t, 9> Window3x3::all() const {
    return {center,     sides[0],   sides[1],   sides[2],  sides[3],
            corners[0], corners[1], corners[2], corners[3]};
}

BitLayer extract_layer(const PixelGrid& grid, Channel channel, int layer) {
    if (layer < 0 || layer > 7) throw std::invalid_argument("layer must be in [0, 7]");
    std::vector<std::uint8_t> bits(grid.size());
    const auto pixels = grid.pixels();
    std::transform(pixels.begin(), pixels.end(), bits.begin(), [=](const Rgb& px) {
        return static_cast<std::uint8_t>((px[channel] >> layer) & 1U);
    });
    return BitLayer(grid.width(), grid.height(), channel, layer, std::move(bits));
}

Window3x3 window_at(const BitLayer& layer, int row, int col) {
    if (row < 1 || col < 1 || row > layer.height() - 2 || col > layer.width() - 2)
        throw std::out_of_range("window_at: (" + std::to_string(row) + ", " + std::to_string(col) +
                                ") is not an interior pixel");
    Window3x3 w;
    w.center = layer.at(row, col);
    w.sides[Window3x3::Up] = layer.at(row - 1, col);
    w.sides[Window3x3::Down] = layer.at(row + 1, col);
    w.sides[Window3x3::Left] = layer.at(row, col - 1);
    w.sides[Window3x3::Right] = layer.at(row, col + 1);
    w.corners[Window3x3::NorthWest] = layer.at(row - 1, col - 1);
    w.corners[Window3x3::NorthEast] = layer.at(row - 1, col + 1);
    w.corners[Window3x3::SouthWest] = layer.at(row + 1, col - 1);
    w.corners[Window3x3::SouthEast] = layer.at(row + 1, col + 1);
    return w;
}

std::vector<std::uint8_t> compose_layers(std::span<const BitLayer> layers) {
    if (layers.size() != 8) throw std::invalid_argument("compose_layers needs exactly 8 layers");
    const std::size_t cells = layers.front().bits().size();
    std::vector<std::uint8_t> values(cells, 0);
    for (const BitLayer& layer : layers) {
        if (layer.bits().size() != cells) throw std::invalid_argument("layer dimensions differ");
        const auto bits = layer.bits();
        for (std::size_t i = 0; i < cells; ++i)
            values[i] = static_cast<std::uint8_t>(values[i] | (bits[i] << layer.layer_index()));
    }
    return values;
}

}  // namespace stegahp
