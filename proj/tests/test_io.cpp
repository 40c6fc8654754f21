#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "funnel/pgm.hpp"
#include "funnel/png_io.hpp"
#include "funnel/render.hpp"
#include "funnel/scene.hpp"

using namespace funnel;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("funnel_io_test_" + name);
}

RawImage random_raw(int w, int h, int maxval, std::uint64_t seed) {
    RawImage img;
    img.width = w;
    img.height = h;
    img.maxval = maxval;
    img.pixels.resize(static_cast<std::size_t>(w) * h);
    std::mt19937_64 rng(seed);
    for (auto& p : img.pixels) p = static_cast<std::uint16_t>(rng() % (maxval + 1));
    return img;
}

}  // namespace

TEST_CASE("PGM round trip is bit exact at both depths") {
    for (int maxval : {255, 65535}) {
        const RawImage img = random_raw(21, 13, maxval, 401);
        const fs::path p = temp_file("roundtrip.pgm");
        write_pgm(p.string(), img);
        const RawImage back = read_pgm(p.string());
        CHECK(back.width == img.width);
        CHECK(back.height == img.height);
        CHECK(back.maxval == img.maxval);
        REQUIRE(back.pixels.size() == img.pixels.size());
        for (std::size_t i = 0; i < img.pixels.size(); ++i) CHECK(back.pixels[i] == img.pixels[i]);
        fs::remove(p);
    }
}

TEST_CASE("PGM reader tolerates comment lines") {
    const fs::path p = temp_file("comment.pgm");
    {
        std::ofstream f(p, std::ios::binary);
        f << "P5\n# a comment line\n4 2\n# another\n255\n";
        const char raster[8] = {0, 1, 2, 3, 4, 5, 6, 7};
        f.write(raster, 8);
    }
    const RawImage img = read_pgm(p.string());
    CHECK(img.width == 4);
    CHECK(img.height == 2);
    CHECK(img.pixels[5] == 5);
    fs::remove(p);
}

TEST_CASE("truncated PGM header reports the byte offset") {
    const fs::path p = temp_file("truncated.pgm");
    {
        std::ofstream f(p, std::ios::binary);
        f << "P5\n64 ";
    }
    try {
        read_pgm(p.string());
        FAIL("expected ImageFormatError");
    } catch (const ImageFormatError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("byte") != std::string::npos);
        CHECK(msg.find("height") != std::string::npos);
    }
    fs::remove(p);
}

TEST_CASE("truncated PGM raster reports the byte offset") {
    const fs::path p = temp_file("shortraster.pgm");
    {
        std::ofstream f(p, std::ios::binary);
        f << "P5\n4 4\n255\n";
        const char raster[7] = {1, 2, 3, 4, 5, 6, 7};  // 9 bytes short
        f.write(raster, 7);
    }
    CHECK_THROWS_AS(read_pgm(p.string()), ImageFormatError);
    fs::remove(p);
}

TEST_CASE("non-P5 magic is rejected") {
    const fs::path p = temp_file("ascii.pgm");
    {
        std::ofstream f(p, std::ios::binary);
        f << "P2\n4 4\n255\n0 1 2 3\n";
    }
    CHECK_THROWS_AS(read_pgm(p.string()), ImageFormatError);
    fs::remove(p);
}

TEST_CASE("quantize clamps and scales to the requested depth") {
    GrayImage img(4, 4, 0.0);
    img.at(0, 0) = -0.5;
    img.at(1, 0) = 0.5;
    img.at(2, 0) = 2.0;
    const RawImage q = quantize(img, 255);
    CHECK(q.pixels[0] == 0);
    CHECK(q.pixels[1] == 128);
    CHECK(q.pixels[2] == 255);
}

TEST_CASE("PNG grayscale write/read round trip at both depths") {
    for (int maxval : {255, 65535}) {
        const RawImage img = random_raw(17, 9, maxval, 403 + maxval);
        const fs::path p = temp_file("gray.png");
        write_png_gray(p.string(), img);
        const RawImage back = read_png_gray(p.string());
        CHECK(back.width == img.width);
        CHECK(back.height == img.height);
        CHECK(back.maxval == maxval);
        for (std::size_t i = 0; i < img.pixels.size(); ++i)
            CHECK(back.pixels[i] == img.pixels[i]);
        fs::remove(p);
    }
}

TEST_CASE("RGB overlay PNG writes and color images are rejected by the gray reader") {
    const fs::path p = temp_file("overlay.png");
    std::vector<std::uint8_t> rgb(8 * 6 * 3, 0);
    rgb[0] = 255;
    write_png_rgb(p.string(), 8, 6, rgb);
    CHECK_THROWS_AS(read_png_gray(p.string()), ImageFormatError);
    fs::remove(p);
}

TEST_CASE("heatmap rendering normalizes to the full 8-bit range") {
    Scene s = star_scene(48, 3);
    ParameterSpace ps = funnel_transform(expand_for_regular(s.image));
    const RawImage heat = render_heatmap(ps);
    CHECK(heat.width == ps.width);
    CHECK(heat.height == ps.height);
    std::uint16_t lo = 255, hi = 0;
    for (auto v : heat.pixels) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(lo == 0);
    CHECK(hi == 255);

    // zero space renders uniformly black
    ParameterSpace zero = funnel_transform(expand_for_regular(GrayImage(16, 16)));
    const RawImage black = render_heatmap(zero);
    for (auto v : black.pixels) CHECK(v == 0);
}
