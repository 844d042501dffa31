#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stegahp/bitplane.hpp"
#include "stegahp/detector.hpp"

namespace stegahp {

using BitSequence = std::vector<std::uint8_t>;

/// Ground truth of one embedding.
struct EmbedRecord {
    int width = 0;
    int height = 0;
    BoundingBox region;
    BitSequence payload_bits;
    /// Cells that received a payload bit.
    std::vector<std::uint8_t> written_mask;
    /// Cells whose LSB actually changed; a subset of written_mask.
    std::vector<std::uint8_t> flipped_mask;
    /// flipped cells / (width * height).
    double change_rate = 0.0;
};

struct EmbedResult {
    PixelGrid stego;
    EmbedRecord record;
};

class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Left-to-right blue ramp, blue(c) = round(255 c / (width - 1)); red and green fixed at 128.
PixelGrid gradient_image(int width, int height);

/// Flat rectangles, ellipses and triangles from a fixed palette on a flat background.
PixelGrid shapes_image(int width, int height, std::uint64_t seed);

/// UTF-8 bytes, most significant bit first.
BitSequence text_to_bits(std::string_view text);
/// Inverse of text_to_bits; trailing bits that do not fill a byte are dropped.
std::string bits_to_text(const BitSequence& bits);

BitSequence random_payload(std::size_t length, std::uint64_t seed);

/// Writes the payload row-major into the blue LSBs of `region`. Throws
/// CapacityError when the payload is longer than the region area and
/// std::invalid_argument when the region is outside the grid.
EmbedResult embed_lsb(const PixelGrid& grid, const BitSequence& payload, const BoundingBox& region);

/// Reads `count` blue LSBs row-major from the region.
BitSequence extract_lsb(const PixelGrid& grid, const BoundingBox& region, std::size_t count);

/// Hamming distance / cell count. Throws std::invalid_argument on dimension mismatch.
double change_rate(const BitLayer& original, const BitLayer& modified);

/// Region sized so a random payload flips about `flip_rate` of all pixels
/// (area = 2 * flip_rate * width * height, same aspect as the image), with the
/// top-left corner drawn uniformly from the middle third of the image.
BoundingBox place_region(int width, int height, double flip_rate, std::uint64_t seed);

}  // namespace stegahp
