#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "funnel/image.hpp"

namespace funnel {

/// Raw PNM-style raster: grayscale samples at maxval 255 or 65535.
struct RawImage {
    int width = 0;
    int height = 0;
    int maxval = 255;
    std::vector<std::uint16_t> pixels;  // row-major
};

struct ImageFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void pgm_fail(const std::string& path, std::streamoff offset,
                                  const std::string& what) {
    throw ImageFormatError(path + ": " + what + " at byte " + std::to_string(offset));
}

// Skips whitespace and '#' comment lines, then reads one unsigned decimal.
inline long pgm_token(std::istream& in, const std::string& path, const char* name) {
    for (;;) {
        const int c = in.peek();
        if (c == EOF) pgm_fail(path, in.tellg(), std::string("truncated header: expected ") + name);
        if (c == '#') {
            std::string line;
            std::getline(in, line);
            continue;
        }
        if (std::isspace(c)) {
            in.get();
            continue;
        }
        break;
    }
    long value = 0;
    bool any = false;
    while (std::isdigit(in.peek())) {
        value = value * 10 + (in.get() - '0');
        any = true;
    }
    if (!any) pgm_fail(path, in.tellg(), std::string("malformed header: expected ") + name);
    return value;
}

}  // namespace detail

/// Binary (P5) PGM reader, maxval 255 or 65535; 16-bit samples are
/// big-endian per the format. Parse errors carry the byte offset.
inline RawImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ImageFormatError(path + ": cannot open file");
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (in.gcount() < 2 || magic[0] != 'P' || magic[1] != '5')
        detail::pgm_fail(path, 0, "not a binary PGM (P5) file");

    RawImage img;
    img.width = static_cast<int>(detail::pgm_token(in, path, "width"));
    img.height = static_cast<int>(detail::pgm_token(in, path, "height"));
    img.maxval = static_cast<int>(detail::pgm_token(in, path, "maxval"));
    if (img.width <= 0 || img.height <= 0)
        detail::pgm_fail(path, in.tellg(), "invalid dimensions");
    if (img.maxval != 255 && img.maxval != 65535)
        detail::pgm_fail(path, in.tellg(), "unsupported maxval (expected 255 or 65535)");
    const int sep = in.get();  // single whitespace before the raster
    if (sep == EOF || !std::isspace(sep))
        detail::pgm_fail(path, in.tellg(), "missing raster separator");

    const std::size_t count = static_cast<std::size_t>(img.width) * img.height;
    img.pixels.resize(count);
    if (img.maxval == 255) {
        std::vector<std::uint8_t> raw(count);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count));
        if (static_cast<std::size_t>(in.gcount()) != count)
            detail::pgm_fail(path, in.tellg(), "truncated raster");
        for (std::size_t i = 0; i < count; ++i) img.pixels[i] = raw[i];
    } else {
        std::vector<std::uint8_t> raw(count * 2);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count * 2));
        if (static_cast<std::size_t>(in.gcount()) != count * 2)
            detail::pgm_fail(path, in.tellg(), "truncated raster");
        for (std::size_t i = 0; i < count; ++i)
            img.pixels[i] = static_cast<std::uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]);
    }
    return img;
}

inline void write_pgm(const std::string& path, const RawImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ImageFormatError(path + ": cannot open for writing");
    out << "P5\n" << img.width << " " << img.height << "\n" << img.maxval << "\n";
    if (img.maxval == 255) {
        std::vector<std::uint8_t> raw(img.pixels.size());
        for (std::size_t i = 0; i < img.pixels.size(); ++i)
            raw[i] = static_cast<std::uint8_t>(img.pixels[i]);
        out.write(reinterpret_cast<const char*>(raw.data()),
                  static_cast<std::streamsize>(raw.size()));
    } else {
        std::vector<std::uint8_t> raw(img.pixels.size() * 2);
        for (std::size_t i = 0; i < img.pixels.size(); ++i) {
            raw[2 * i] = static_cast<std::uint8_t>(img.pixels[i] >> 8);
            raw[2 * i + 1] = static_cast<std::uint8_t>(img.pixels[i] & 0xff);
        }
        out.write(reinterpret_cast<const char*>(raw.data()),
                  static_cast<std::streamsize>(raw.size()));
    }
    if (!out) throw ImageFormatError(path + ": write failed");
}

inline GrayImage to_gray(const RawImage& raw) {
    GrayImage img(raw.width, raw.height);
    const double scale = 1.0 / raw.maxval;
    for (std::size_t i = 0; i < raw.pixels.size(); ++i) img.data[i] = raw.pixels[i] * scale;
    return img;
}

/// Quantizes [0, 1] intensities to the given depth; file output only, the
/// processing pipeline stays in doubles.
inline RawImage quantize(const GrayImage& img, int maxval = 255) {
    RawImage raw;
    raw.width = img.width;
    raw.height = img.height;
    raw.maxval = maxval;
    raw.pixels.resize(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
        const double v = std::min(1.0, std::max(0.0, img.data[i]));
        raw.pixels[i] = static_cast<std::uint16_t>(std::lround(v * maxval));
    }
    return raw;
}

}  // namespace funnel
