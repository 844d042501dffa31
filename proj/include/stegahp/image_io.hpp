#pragma once

#include <cstdint>
#include <filesystem>
#include <span>

#include "stegahp/bitplane.hpp"

namespace stegahp {

/// Reads an 8-bit-per-channel PNG or uncompressed 24/32-bit BMP without any
/// colour transformation. Alpha is dropped, gray replicates into R=G=B.
/// Throws IoError when the file cannot be read or is truncated, FormatError for
/// unsupported formats (palette, 16-bit, sub-byte depth, compressed BMP).
PixelGrid load_image(const std::filesystem::path& path);

void save_png(const PixelGrid& grid, const std::filesystem::path& path);
void save_bmp(const PixelGrid& grid, const std::filesystem::path& path);

/// 8-bit grayscale outputs for binary masks: 0 -> black, nonzero -> white.
void save_mask_png(std::span<const std::uint8_t> mask, int width, int height,
                   const std::filesystem::path& path);
void save_mask_pgm(std::span<const std::uint8_t> mask, int width, int height,
                   const std::filesystem::path& path);

}  // namespace stegahp
