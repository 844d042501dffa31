#include "stegahp/stego_lab.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace stegahp {

PixelGrid gradient_image(int width, int height) {
    if (width < 3 || height < 3) throw std::invalid_argument("gradient_image: need at least 3x3 pixels");
    PixelGrid grid(width, height, Rgb{128, 128, 0});
    for (int c = 0; c < width; ++c) {
        const auto blue = static_cast<std::uint8_t>(std::lround(255.0 * c / (width - 1)));
        for (int r = 0; r < height; ++r) grid.at(r, c).blue = blue;
    }
    return grid;
}

namespace {

// Blue levels are multiples of 64 (or 255) so flat areas keep bits 0..3 uniform.
constexpr std::array<Rgb, 8> kPalette{{
    {220, 20, 0},
    {0, 90, 255},
    {250, 200, 0},
    {0, 160, 64},
    {128, 0, 128},
    {64, 64, 192},
    {255, 128, 0},
    {30, 30, 0},
}};
constexpr Rgb kBackground{224, 224, 224};

struct Point {
    double x;
    double y;
};

double edge(const Point& a, const Point& b, double px, double py) {
    return (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
}

}  // namespace

PixelGrid shapes_image(int width, int height, std::uint64_t seed) {
    if (width < 3 || height < 3) throw std::invalid_argument("shapes_image: need at least 3x3 pixels");
    PixelGrid grid(width, height, kBackground);
    std::mt19937_64 rng(seed);

    const int min_side = std::min(width, height);
    std::uniform_int_distribution<int> pick_x(0, width - 1);
    std::uniform_int_distribution<int> pick_y(0, height - 1);
    std::uniform_int_distribution<int> pick_size(std::max(1, min_side / 12), std::max(1, min_side / 4));

    constexpr int kShapes = 14;
    for (int i = 0; i < kShapes; ++i) {
        const Rgb color = kPalette[static_cast<std::size_t>(i) % kPalette.size()];
        const int cx = pick_x(rng);
        const int cy = pick_y(rng);
        const int rx = pick_size(rng);
        const int ry = pick_size(rng);
        const int top = std::max(0, cy - ry);
        const int bottom = std::min(height - 1, cy + ry);
        const int left = std::max(0, cx - rx);
        const int right = std::min(width - 1, cx + rx);

        switch (i % 3) {
            case 0:  // rectangle
                for (int r = top; r <= bottom; ++r)
                    for (int c = left; c <= right; ++c) grid.at(r, c) = color;
                break;
            case 1:  // ellipse
                for (int r = top; r <= bottom; ++r)
                    for (int c = left; c <= right; ++c) {
                        const double dx = static_cast<double>(c - cx) / rx;
                        const double dy = static_cast<double>(r - cy) / ry;
                        if (dx * dx + dy * dy <= 1.0) grid.at(r, c) = color;
                    }
                break;
            default: {  // triangle, apex up
                const Point a{static_cast<double>(cx), static_cast<double>(cy - ry)};
                const Point b{static_cast<double>(cx - rx), static_cast<double>(cy + ry)};
                const Point c{static_cast<double>(cx + rx), static_cast<double>(cy + ry)};
                for (int r = top; r <= bottom; ++r)
                    for (int col = left; col <= right; ++col) {
                        const double e0 = edge(a, b, col, r);
                        const double e1 = edge(b, c, col, r);
                        const double e2 = edge(c, a, col, r);
                        if ((e0 >= 0 && e1 >= 0 && e2 >= 0) || (e0 <= 0 && e1 <= 0 && e2 <= 0))
                            grid.at(r, col) = color;
                    }
                break;
            }
        }
    }
    return grid;
}

BitSequence text_to_bits(std::string_view text) {
    BitSequence bits;
    bits.reserve(text.size() * 8);
    for (const char ch : text) {
        const auto byte = static_cast<unsigned char>(ch);
        for (int b = 7; b >= 0; --b) bits.push_back(static_cast<std::uint8_t>((byte >> b) & 1U));
    }
    return bits;
}

std::string bits_to_text(const BitSequence& bits) {
    std::string text;
    text.reserve(bits.size() / 8);
    for (std::size_t i = 0; i + 8 <= bits.size(); i += 8) {
        unsigned byte = 0;
        for (std::size_t b = 0; b < 8; ++b) byte = (byte << 1) | (bits[i + b] & 1U);
        text.push_back(static_cast<char>(byte));
    }
    return text;
}

BitSequence random_payload(std::size_t length, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    BitSequence bits(length);
    for (auto& bit : bits) bit = static_cast<std::uint8_t>(rng() >> 63);
    return bits;
}

namespace {

void check_region(const PixelGrid& grid, const BoundingBox& region) {
    if (region.top < 0 || region.left < 0 || region.bottom >= grid.height() || region.right >= grid.width() ||
        region.top > region.bottom || region.left > region.right)
        throw std::invalid_argument("region lies outside the image or is empty");
}

}  // namespace

EmbedResult embed_lsb(const PixelGrid& grid, const BitSequence& payload, const BoundingBox& region) {
    check_region(grid, region);
    if (static_cast<long long>(payload.size()) > region.area())
        throw CapacityError("payload of " + std::to_string(payload.size()) + " bits exceeds region capacity of " +
                            std::to_string(region.area()) + " pixels");

    EmbedResult result{grid, {}};
    EmbedRecord& rec = result.record;
    rec.width = grid.width();
    rec.height = grid.height();
    rec.region = region;
    rec.payload_bits = payload;
    rec.written_mask.assign(grid.size(), 0);
    rec.flipped_mask.assign(grid.size(), 0);

    std::size_t flipped = 0;
    std::size_t next = 0;
    for (int r = region.top; r <= region.bottom && next < payload.size(); ++r) {
        for (int c = region.left; c <= region.right && next < payload.size(); ++c, ++next) {
            Rgb& px = result.stego.at(r, c);
            const auto bit = static_cast<std::uint8_t>(payload[next] != 0 ? 1 : 0);
            const std::size_t cell = static_cast<std::size_t>(r) * static_cast<std::size_t>(grid.width()) +
                                     static_cast<std::size_t>(c);
            rec.written_mask[cell] = 1;
            if ((px.blue & 1U) != bit) {
                rec.flipped_mask[cell] = 1;
                ++flipped;
            }
            px.blue = static_cast<std::uint8_t>((px.blue & 0xFEU) | bit);
        }
    }
    rec.change_rate = grid.size() > 0 ? static_cast<double>(flipped) / static_cast<double>(grid.size()) : 0.0;
    return result;
}

BitSequence extract_lsb(const PixelGrid& grid, const BoundingBox& region, std::size_t count) {
    check_region(grid, region);
    if (static_cast<long long>(count) > region.area()) throw CapacityError("requested more bits than the region holds");
    BitSequence bits;
    bits.reserve(count);
    for (int r = region.top; r <= region.bottom && bits.size() < count; ++r)
        for (int c = region.left; c <= region.right && bits.size() < count; ++c)
            bits.push_back(static_cast<std::uint8_t>(grid.at(r, c).blue & 1U));
    return bits;
}

double change_rate(const BitLayer& original, const BitLayer& modified) {
    if (original.width() != modified.width() || original.height() != modified.height())
        throw std::invalid_argument("change_rate: layer dimensions differ");
    const auto a = original.bits();
    const auto b = modified.bits();
    if (a.empty()) return 0.0;
    std::size_t differing = 0;
    for (std::size_t i = 0; i < a.size(); ++i) differing += a[i] != b[i] ? 1 : 0;
    return static_cast<double>(differing) / static_cast<double>(a.size());
}

BoundingBox place_region(int width, int height, double flip_rate, std::uint64_t seed) {
    if (width < 3 || height < 3) throw std::invalid_argument("place_region: need at least 3x3 pixels");
    if (!(flip_rate > 0.0 && flip_rate <= 0.5)) throw std::invalid_argument("place_region: flip rate must be in (0, 0.5]");

    const double area = 2.0 * flip_rate * width * height;
    const int h = std::clamp(static_cast<int>(std::lround(std::sqrt(2.0 * flip_rate) * height)), 1, height);
    const int w = std::clamp(static_cast<int>(std::lround(area / h)), 1, width);

    const int top_lo = std::min(height / 3, height - h);
    const int top_hi = std::max(top_lo, std::min(2 * height / 3, height - h));
    const int left_lo = std::min(width / 3, width - w);
    const int left_hi = std::max(left_lo, std::min(2 * width / 3, width - w));

    std::mt19937_64 rng(seed);
    const int top = std::uniform_int_distribution<int>(top_lo, top_hi)(rng);
    const int left = std::uniform_int_distribution<int>(left_lo, left_hi)(rng);
    return {top, left, top + h - 1, left + w - 1};
}

}  // namespace stegahp
