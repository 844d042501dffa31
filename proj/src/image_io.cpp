#include "stegahp/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>
#include <new>
#include <string>
#include <vector>

namespace stegahp {
namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f != nullptr) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

std::vector<std::uint8_t> read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed for '" + path.string() + "'");
    return bytes;
}

// ---------------------------------------------------------------------------
// PNG
// ---------------------------------------------------------------------------

struct PngErrorState {
    std::array<char, 256> message{};
};

void png_error_handler(png_structp png, png_const_charp msg) {
    auto* state = static_cast<PngErrorState*>(png_get_error_ptr(png));
    if (state != nullptr) std::snprintf(state->message.data(), state->message.size(), "%s", msg);
    png_longjmp(png, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

struct PngHeader {
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int bit_depth = 0;
    int color_type = 0;
};

// The setjmp frames below hold no objects with destructors; all buffers live
// in the caller.
bool png_read_header(png_structp png, png_infop info, std::FILE* fp, PngHeader& header) {
    if (setjmp(png_jmpbuf(png))) return false;
    png_init_io(png, fp);
    png_read_info(png, info);
    int interlace = 0;
    png_get_IHDR(png, info, &header.width, &header.height, &header.bit_depth, &header.color_type,
                 &interlace, nullptr, nullptr);
    return true;
}

bool png_read_rows(png_structp png, png_infop info, png_bytepp rows) {
    if (setjmp(png_jmpbuf(png))) return false;
    png_set_interlace_handling(png);
    png_read_update_info(png, info);
    png_read_image(png, rows);
    png_read_end(png, nullptr);
    return true;
}

struct PngReadGuard {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReadGuard() { png_destroy_read_struct(&png, info != nullptr ? &info : nullptr, nullptr); }
};

PixelGrid read_png(const std::filesystem::path& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw IoError("cannot open '" + path.string() + "' for reading");

    PngErrorState errors;
    PngReadGuard guard;
    guard.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &errors, png_error_handler, png_warning_handler);
    if (guard.png == nullptr) throw std::bad_alloc();
    guard.info = png_create_info_struct(guard.png);
    if (guard.info == nullptr) throw std::bad_alloc();

    PngHeader header;
    if (!png_read_header(guard.png, guard.info, fp.get(), header))
        throw IoError("corrupt or truncated PNG '" + path.string() + "': " + errors.message.data());

    if (header.color_type == PNG_COLOR_TYPE_PALETTE)
        throw FormatError("palette PNG is not supported: '" + path.string() + "'");
    if (header.bit_depth != 8)
        throw FormatError("PNG bit depth " + std::to_string(header.bit_depth) +
                          " is not supported (need 8 bits per channel): '" + path.string() + "'");

    std::size_t channels = 0;
    switch (header.color_type) {
        case PNG_COLOR_TYPE_GRAY: channels = 1; break;
        case PNG_COLOR_TYPE_GRAY_ALPHA: channels = 2; break;
        case PNG_COLOR_TYPE_RGB: channels = 3; break;
        case PNG_COLOR_TYPE_RGB_ALPHA: channels = 4; break;
        default: throw FormatError("unsupported PNG color type in '" + path.string() + "'");
    }

    const std::size_t width = header.width;
    const std::size_t height = header.height;
    std::vector<png_byte> buffer(width * height * channels);
    std::vector<png_bytep> rows(height);
    for (std::size_t r = 0; r < height; ++r) rows[r] = buffer.data() + r * width * channels;

    if (!png_read_rows(guard.png, guard.info, rows.data()))
        throw IoError("corrupt or truncated PNG '" + path.string() + "': " + errors.message.data());

    std::vector<Rgb> pixels(width * height);
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        const png_byte* src = buffer.data() + i * channels;
        if (channels <= 2)
            pixels[i] = Rgb{src[0], src[0], src[0]};
        else
            pixels[i] = Rgb{src[0], src[1], src[2]};
    }
    return PixelGrid(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

void write_png(const std::filesystem::path& path, std::uint32_t format, int width, int height,
               const void* data) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(width);
    image.height = static_cast<png_uint_32>(height);
    image.format = format;
    if (png_image_write_to_file(&image, path.c_str(), 0, data, 0, nullptr) == 0) {
        const std::string message = image.message;
        png_image_free(&image);
        throw IoError("cannot write PNG '" + path.string() + "': " + message);
    }
}

// ---------------------------------------------------------------------------
// BMP
// ---------------------------------------------------------------------------

std::uint32_t le32(const std::vector<std::uint8_t>& b, std::size_t at) {
    return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
           (static_cast<std::uint32_t>(b[at + 2]) << 16) | (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

std::uint16_t le16(const std::vector<std::uint8_t>& b, std::size_t at) {
    return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

void put_le32(std::vector<std::uint8_t>& b, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_le16(std::vector<std::uint8_t>& b, std::uint16_t v) {
    b.push_back(static_cast<std::uint8_t>(v & 0xFF));
    b.push_back(static_cast<std::uint8_t>(v >> 8));
}

constexpr std::size_t kBmpFileHeader = 14;
constexpr std::uint32_t kBiRgb = 0;
constexpr std::uint32_t kBiBitfields = 3;

PixelGrid read_bmp(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    const std::string where = " in '" + path.string() + "'";
    if (bytes.size() < kBmpFileHeader + 4) throw IoError("truncated BMP header" + where);
    const std::uint32_t data_offset = le32(bytes, 10);
    const std::uint32_t dib_size = le32(bytes, 14);
    if (dib_size < 40) throw FormatError("unsupported BMP header version" + where);
    if (bytes.size() < kBmpFileHeader + dib_size) throw IoError("truncated BMP header" + where);

    const auto width = static_cast<std::int32_t>(le32(bytes, 18));
    const auto raw_height = static_cast<std::int32_t>(le32(bytes, 22));
    const std::uint16_t bpp = le16(bytes, 28);
    const std::uint32_t compression = le32(bytes, 30);

    if (width <= 0 || raw_height == 0) throw FormatError("invalid BMP dimensions" + where);
    if (bpp != 24 && bpp != 32)
        throw FormatError("BMP with " + std::to_string(bpp) + " bits per pixel is not supported" + where);
    if (compression == kBiBitfields && bpp == 32) {
        const std::size_t mask_at = kBmpFileHeader + 40;
        if (bytes.size() < mask_at + 12) throw IoError("truncated BMP header" + where);
        if (le32(bytes, mask_at) != 0x00FF0000U || le32(bytes, mask_at + 4) != 0x0000FF00U ||
            le32(bytes, mask_at + 8) != 0x000000FFU)
            throw FormatError("BMP with non-standard channel masks is not supported" + where);
    } else if (compression != kBiRgb) {
        throw FormatError("compressed BMP is not supported" + where);
    }

    const bool top_down = raw_height < 0;
    const std::int64_t height = top_down ? -static_cast<std::int64_t>(raw_height) : raw_height;
    const std::size_t bytes_per_pixel = bpp / 8;
    const std::size_t stride = ((static_cast<std::size_t>(width) * bpp + 31) / 32) * 4;
    if (data_offset > bytes.size() || bytes.size() - data_offset < stride * static_cast<std::size_t>(height))
        throw IoError("truncated BMP pixel data" + where);

    std::vector<Rgb> pixels(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    for (std::int64_t r = 0; r < height; ++r) {
        const std::int64_t file_row = top_down ? r : height - 1 - r;
        const std::size_t base = data_offset + static_cast<std::size_t>(file_row) * stride;
        for (std::int32_t c = 0; c < width; ++c) {
            const std::size_t p = base + static_cast<std::size_t>(c) * bytes_per_pixel;
            pixels[static_cast<std::size_t>(r) * static_cast<std::size_t>(width) + static_cast<std::size_t>(c)] =
                Rgb{bytes[p + 2], bytes[p + 1], bytes[p]};
        }
    }
    return PixelGrid(width, static_cast<int>(height), std::move(pixels));
}

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void check_mask(std::span<const std::uint8_t> mask, int width, int height) {
    if (width <= 0 || height <= 0 ||
        mask.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw std::invalid_argument("mask size does not match width * height");
}

}  // namespace

PixelGrid load_image(const std::filesystem::path& path) {
    static constexpr std::array<std::uint8_t, 8> kPngSignature{0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

    const std::vector<std::uint8_t> bytes = read_all(path);
    if (bytes.size() >= 2 && bytes[0] == 'B' && bytes[1] == 'M') return read_bmp(path, bytes);
    if (bytes.size() >= kPngSignature.size() &&
        std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin()))
        return read_png(path);
    if (bytes.size() < kPngSignature.size()) throw IoError("file too short to be an image: '" + path.string() + "'");
    throw FormatError("unrecognised image format (expected PNG or BMP): '" + path.string() + "'");
}

void save_png(const PixelGrid& grid, const std::filesystem::path& path) {
    std::vector<std::uint8_t> data;
    data.reserve(grid.size() * 3);
    for (const Rgb& px : grid.pixels()) {
        data.push_back(px.red);
        data.push_back(px.green);
        data.push_back(px.blue);
    }
    write_png(path, PNG_FORMAT_RGB, grid.width(), grid.height(), data.data());
}

void save_bmp(const PixelGrid& grid, const std::filesystem::path& path) {
    const std::size_t stride = ((static_cast<std::size_t>(grid.width()) * 24 + 31) / 32) * 4;
    const std::size_t image_size = stride * static_cast<std::size_t>(grid.height());
    const std::size_t offset = kBmpFileHeader + 40;

    std::vector<std::uint8_t> out;
    out.reserve(offset + image_size);
    out.push_back('B');
    out.push_back('M');
    put_le32(out, static_cast<std::uint32_t>(offset + image_size));
    put_le32(out, 0);
    put_le32(out, static_cast<std::uint32_t>(offset));
    put_le32(out, 40);
    put_le32(out, static_cast<std::uint32_t>(grid.width()));
    put_le32(out, static_cast<std::uint32_t>(grid.height()));
    put_le16(out, 1);
    put_le16(out, 24);
    put_le32(out, kBiRgb);
    put_le32(out, static_cast<std::uint32_t>(image_size));
    put_le32(out, 2835);  // 72 dpi
    put_le32(out, 2835);
    put_le32(out, 0);
    put_le32(out, 0);

    for (int r = grid.height() - 1; r >= 0; --r) {
        std::size_t written = 0;
        for (int c = 0; c < grid.width(); ++c) {
            const Rgb& px = grid.at(r, c);
            out.push_back(px.blue);
            out.push_back(px.green);
            out.push_back(px.red);
            written += 3;
        }
        for (; written < stride; ++written) out.push_back(0);
    }
    write_bytes(path, out);
}

void save_mask_png(std::span<const std::uint8_t> mask, int width, int height,
                   const std::filesystem::path& path) {
    check_mask(mask, width, height);
    std::vector<std::uint8_t> gray(mask.size());
    for (std::size_t i = 0; i < mask.size(); ++i) gray[i] = mask[i] != 0 ? 255 : 0;
    write_png(path, PNG_FORMAT_GRAY, width, height, gray.data());
}

void save_mask_pgm(std::span<const std::uint8_t> mask, int width, int height,
                   const std::filesystem::path& path) {
    check_mask(mask, width, height);
    const std::string header = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(header.size() + mask.size());
    for (const std::uint8_t bit : mask) out.push_back(bit != 0 ? 255 : 0);
    write_bytes(path, out);
}

}  // namespace stegahp
