#pragma once

#include <csetjmp>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <png.h>

#include "funnel/pgm.hpp"

namespace funnel {

namespace detail {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace detail

/// Reads an 8- or 16-bit grayscale PNG. Color or palette images are
/// rejected; this loader feeds the grayscale pipeline only.
inline RawImage read_png_gray(const std::string& path) {
    detail::FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw ImageFormatError(path + ": cannot open file");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ImageFormatError(path + ": libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ImageFormatError(path + ": not a readable PNG file");
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);

    const png_byte color = png_get_color_type(png, info);
    png_byte depth = png_get_bit_depth(png, info);
    if (color != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ImageFormatError(path + ": not a grayscale PNG");
    }
    if (depth < 8) {
        png_set_expand_gray_1_2_4_to_8(png);
        depth = 8;
    }
    png_read_update_info(png, info);

    RawImage img;
    img.width = static_cast<int>(png_get_image_width(png, info));
    img.height = static_cast<int>(png_get_image_height(png, info));
    img.maxval = depth == 16 ? 65535 : 255;
    img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);

    const std::size_t stride = png_get_rowbytes(png, info);
    std::vector<png_byte> row(stride);
    for (int r = 0; r < img.height; ++r) {
        png_read_row(png, row.data(), nullptr);
        for (int c = 0; c < img.width; ++c) {
            img.pixels[static_cast<std::size_t>(r) * img.width + c] =
                depth == 16 ? static_cast<std::uint16_t>((row[2 * c] << 8) | row[2 * c + 1])
                            : row[c];
        }
    }
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

/// 8-bit RGB writer for detection overlays.
inline void write_png_rgb(const std::string& path, int width, int height,
                          const std::vector<std::uint8_t>& rgb) {
    detail::FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw ImageFormatError(path + ": cannot open for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw ImageFormatError(path + ": libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw ImageFormatError(path + ": PNG write failed");
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int r = 0; r < height; ++r)
        png_write_row(png, const_cast<png_bytep>(&rgb[static_cast<std::size_t>(r) * width * 3]));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

/// Grayscale writer; depth follows the raster's maxval (255 or 65535).
inline void write_png_gray(const std::string& path, const RawImage& img) {
    detail::FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw ImageFormatError(path + ": cannot open for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw ImageFormatError(path + ": libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw ImageFormatError(path + ": PNG write failed");
    }
    const bool deep = img.maxval > 255;
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
                 static_cast<png_uint_32>(img.height), deep ? 16 : 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<png_byte> row(static_cast<std::size_t>(img.width) * (deep ? 2 : 1));
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            const std::uint16_t v = img.pixels[static_cast<std::size_t>(r) * img.width + c];
            if (deep) {
                row[2 * c] = static_cast<png_byte>(v >> 8);
                row[2 * c + 1] = static_cast<png_byte>(v & 0xff);
            } else {
                row[c] = static_cast<png_byte>(v);
            }
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}


}  // namespace funnel
