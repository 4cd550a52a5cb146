#pragma once

// Binary PGM (P5) and grayscale PNG, 8 or 16 bit. Samples are mapped to
// [0, 1] on load and quantized with clamping on save.

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mire/image.hpp"

namespace mire {

enum class ImageFormat { Pgm, Png };

enum class IoErrc {
    MalformedHeader,
    MultiChannel,
    TruncatedPayload,
    UnsupportedBitDepth,
    UnknownFormat,
    FileAccess,
};

inline const char* to_string(IoErrc e) {
    switch (e) {
        case IoErrc::MalformedHeader: return "malformed header";
        case IoErrc::MultiChannel: return "multi-channel input";
        case IoErrc::TruncatedPayload: return "truncated payload";
        case IoErrc::UnsupportedBitDepth: return "unsupported bit depth";
        case IoErrc::UnknownFormat: return "unknown format";
        case IoErrc::FileAccess: return "file access";
    }
    return "unknown";
}

class ImageIoError : public std::runtime_error {
public:
    ImageIoError(IoErrc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    IoErrc code() const noexcept { return code_; }

private:
    IoErrc code_;
};

/// An image together with the sample depth it was stored at.
struct DecodedImage {
    Image image;
    int bit_depth = 8;
};

namespace detail {

inline double max_sample(int bit_depth) { return bit_depth == 16 ? 65535.0 : 255.0; }

inline std::uint16_t quantize(double v, int bit_depth) {
    const double m = max_sample(bit_depth);
    return static_cast<std::uint16_t>(std::round(std::clamp(v, 0.0, 1.0) * m));
}

inline void check_bit_depth(int bit_depth) {
    if (bit_depth != 8 && bit_depth != 16)
        throw ImageIoError(IoErrc::UnsupportedBitDepth, std::to_string(bit_depth) + " bits");
}

// PGM header token reader; skips whitespace and '#' comments.
class PgmHeaderReader {
public:
    explicit PgmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    unsigned long next_number() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_]))
            throw ImageIoError(IoErrc::MalformedHeader, "expected a decimal field");
        unsigned long v = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            v = v * 10 + (bytes_[pos_] - '0');
            if (v > 0xFFFFFFFFul) throw ImageIoError(IoErrc::MalformedHeader, "field overflow");
            ++pos_;
        }
        return v;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t raster_offset() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
            throw ImageIoError(IoErrc::MalformedHeader, "missing separator before raster");
        return pos_ + 1;
    }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 2;
};

inline DecodedImage decode_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P')
        throw ImageIoError(IoErrc::MalformedHeader, "missing PGM magic");
    if (bytes[1] == '6') throw ImageIoError(IoErrc::MultiChannel, "PPM (P6) is a color format");
    if (bytes[1] != '5') throw ImageIoError(IoErrc::MalformedHeader, "only binary P5 PGM is supported");

    PgmHeaderReader header(bytes);
    const auto width = header.next_number();
    const auto height = header.next_number();
    const auto maxval = header.next_number();
    if (width == 0 || height == 0) throw ImageIoError(IoErrc::MalformedHeader, "zero dimension");
    if (maxval == 0 || maxval > 65535) throw ImageIoError(IoErrc::MalformedHeader, "maxval out of range");
    const std::size_t offset = header.raster_offset();

    const int depth = maxval > 255 ? 16 : 8;
    const std::size_t bytes_per_sample = depth == 16 ? 2 : 1;
    const std::size_t count = width * height;
    if (bytes.size() - offset < count * bytes_per_sample)
        throw ImageIoError(IoErrc::TruncatedPayload, "expected " + std::to_string(count * bytes_per_sample) +
                                                         " raster bytes, got " +
                                                         std::to_string(bytes.size() - offset));

    std::vector<double> data(count);
    const double scale = static_cast<double>(maxval);
    const std::uint8_t* p = bytes.data() + offset;
    for (std::size_t i = 0; i < count; ++i) {
        unsigned s = depth == 16 ? (unsigned{p[2 * i]} << 8) | p[2 * i + 1] : p[i];
        if (s > maxval) throw ImageIoError(IoErrc::MalformedHeader, "sample exceeds maxval");
        data[i] = s / scale;
    }
    return {Image(width, height, std::move(data)), depth};
}

inline std::vector<std::uint8_t> encode_pgm(const Image& img, int bit_depth) {
    const std::string header = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) +
                               "\n" + (bit_depth == 16 ? "65535" : "255") + "\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(header.size() + img.size() * (bit_depth == 16 ? 2 : 1));
    for (double v : img.pixels()) {
        const std::uint16_t q = quantize(v, bit_depth);
        if (bit_depth == 16) out.push_back(static_cast<std::uint8_t>(q >> 8));
        out.push_back(static_cast<std::uint8_t>(q & 0xFF));
    }
    return out;
}

// libpng reports errors by longjmp. Everything touched across setjmp lives
// in this struct, reached through a pointer that is never reassigned.
struct PngRead {
    std::span<const std::uint8_t> bytes;
    std::size_t pos = 0;
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int bit_depth = 0;
    int color_type = 0;
    std::vector<std::uint8_t> raw;
    std::vector<png_bytep> rows;
    int stage = 0;  // 0 header, 1 raster
};

inline void png_read_span(png_structp png, png_bytep out, png_size_t n) {
    auto* st = static_cast<PngRead*>(png_get_io_ptr(png));
    if (n > st->bytes.size() - st->pos) png_error(png, "unexpected end of data");
    std::memcpy(out, st->bytes.data() + st->pos, n);
    st->pos += n;
}

inline void png_quiet_error(png_structp png, png_const_charp) { png_longjmp(png, 1); }
inline void png_quiet_warning(png_structp, png_const_charp) {}

// Returns false on a libpng error; st.stage says where it happened.
inline bool png_read_raw(PngRead& st, bool& multi_channel) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_quiet_error, png_quiet_warning);
    if (png == nullptr) return false;
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        return false;
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        return false;
    }
    png_set_read_fn(png, &st, png_read_span);
    png_read_info(png, info);
    st.width = png_get_image_width(png, info);
    st.height = png_get_image_height(png, info);
    st.bit_depth = png_get_bit_depth(png, info);
    st.color_type = png_get_color_type(png, info);
    if (st.color_type != PNG_COLOR_TYPE_GRAY) {
        multi_channel = true;
        png_destroy_read_struct(&png, &info, nullptr);
        return true;
    }
    if (st.bit_depth < 8) {
        png_set_expand_gray_1_2_4_to_8(png);
        st.bit_depth = 8;
    }
    png_read_update_info(png, info);
    const std::size_t row_bytes = png_get_rowbytes(png, info);
    st.raw.assign(row_bytes * st.height, 0);
    st.rows.resize(st.height);
    for (png_uint_32 r = 0; r < st.height; ++r) st.rows[r] = st.raw.data() + r * row_bytes;
    st.stage = 1;
    png_read_image(png, st.rows.data());
    png_destroy_read_struct(&png, &info, nullptr);
    return true;
}

inline DecodedImage decode_png(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0)
        throw ImageIoError(IoErrc::MalformedHeader, "missing PNG signature");
    PngRead st;
    st.bytes = bytes;
    bool multi_channel = false;
    if (!png_read_raw(st, multi_channel)) {
        if (st.stage == 0) throw ImageIoError(IoErrc::MalformedHeader, "unreadable PNG header");
        throw ImageIoError(IoErrc::TruncatedPayload, "PNG image data ended early or is corrupt");
    }
    if (multi_channel)
        throw ImageIoError(IoErrc::MultiChannel, "PNG color type " + std::to_string(st.color_type));

    const std::size_t count = std::size_t{st.width} * st.height;
    const int depth = st.bit_depth;
    const double scale = max_sample(depth);
    std::vector<double> data(count);
    for (std::size_t i = 0; i < count; ++i) {
        const unsigned s = depth == 16 ? (unsigned{st.raw[2 * i]} << 8) | st.raw[2 * i + 1] : st.raw[i];
        data[i] = s / scale;
    }
    return {Image(st.width, st.height, std::move(data)), depth};
}

inline void png_write_vector(png_structp png, png_bytep in, png_size_t n) {
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), in, in + n);
}

inline void png_flush_noop(png_structp) {}

inline bool png_write_raw(std::vector<std::uint8_t>& out, std::vector<png_bytep>& rows, png_uint_32 width,
                          png_uint_32 height, int bit_depth) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_quiet_error, png_quiet_warning);
    if (png == nullptr) return false;
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_write_struct(&png, nullptr);
        return false;
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        return false;
    }
    png_set_write_fn(png, &out, png_write_vector, png_flush_noop);
    png_set_IHDR(png, info, width, height, bit_depth, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return true;
}

inline std::vector<std::uint8_t> encode_png(const Image& img, int bit_depth) {
    if (img.empty()) throw std::invalid_argument("encode_png: empty image");
    const std::size_t bps = bit_depth == 16 ? 2 : 1;
    const std::size_t row_bytes = img.width() * bps;
    std::vector<std::uint8_t> raw(row_bytes * img.height());
    for (std::size_t i = 0; i < img.size(); ++i) {
        const std::uint16_t q = quantize(img.pixels()[i], bit_depth);
        if (bps == 2) {
            raw[2 * i] = static_cast<std::uint8_t>(q >> 8);
            raw[2 * i + 1] = static_cast<std::uint8_t>(q & 0xFF);
        } else {
            raw[i] = static_cast<std::uint8_t>(q);
        }
    }
    std::vector<png_bytep> rows(img.height());
    for (std::size_t r = 0; r < img.height(); ++r) rows[r] = raw.data() + r * row_bytes;
    std::vector<std::uint8_t> out;
    if (!png_write_raw(out, rows, static_cast<png_uint_32>(img.width()), static_cast<png_uint_32>(img.height()),
                       bit_depth))
        throw std::runtime_error("encode_png: libpng write failure");
    return out;
}

}  // namespace detail

inline DecodedImage decode_image(std::span<const std::uint8_t> bytes, ImageFormat format) {
    return format == ImageFormat::Pgm ? detail::decode_pgm(bytes) : detail::decode_png(bytes);
}

inline Image load_image(std::span<const std::uint8_t> bytes, ImageFormat format) {
    return decode_image(bytes, format).image;
}

inline std::vector<std::uint8_t> save_image(const Image& img, ImageFormat format, int bit_depth) {
    detail::check_bit_depth(bit_depth);
    return format == ImageFormat::Pgm ? detail::encode_pgm(img, bit_depth) : detail::encode_png(img, bit_depth);
}

inline ImageFormat detect_format(std::span<const std::uint8_t> bytes) {
    if (bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0) return ImageFormat::Png;
    if (bytes.size() >= 2 && bytes[0] == 'P') return ImageFormat::Pgm;
    throw ImageIoError(IoErrc::UnknownFormat, "neither PGM nor PNG magic");
}

inline ImageFormat format_from_path(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".pgm") return ImageFormat::Pgm;
    if (ext == ".png") return ImageFormat::Png;
    throw ImageIoError(IoErrc::UnknownFormat, "cannot infer format from '" + path.string() + "'");
}

inline std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ImageIoError(IoErrc::FileAccess, "cannot open '" + path.string() + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ImageIoError(IoErrc::FileAccess, "cannot create '" + path.string() + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw ImageIoError(IoErrc::FileAccess, "write failed for '" + path.string() + "'");
}

/// Reads a PGM or PNG, sniffing the format from its magic bytes.
inline DecodedImage read_image_file(const std::filesystem::path& path) {
    const auto bytes = read_file_bytes(path);
    return decode_image(bytes, detect_format(bytes));
}

/// Writes with the format chosen by the file extension (.pgm or .png).
inline void write_image_file(const std::filesystem::path& path, const Image& img, int bit_depth) {
    write_file_bytes(path, save_image(img, format_from_path(path), bit_depth));
}

}  // namespace mire
