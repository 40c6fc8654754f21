#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "funnel/image.hpp"
#include "funnel/noise.hpp"

using namespace funnel;

TEST_CASE("expand_for_regular pads to W x (H + 2*ceil(W/2))") {
    GrayImage a(170, 428);
    GrayImage ea = expand_for_regular(a);
    CHECK(ea.width == 170);
    CHECK(ea.height == 598);

    GrayImage zero(4, 4);
    GrayImage ez = expand_for_regular(zero);
    CHECK(ez.width == 4);
    CHECK(ez.height == 8);
    for (double v : ez.data) CHECK(v == 0.0);
}

TEST_CASE("expansion preserves centered coordinates") {
    GrayImage img(6, 4);
    img.at_xy(0, 0) = 1.0;
    GrayImage e = expand_for_regular(img);
    CHECK(e.width == 6);
    CHECK(e.height == 10);
    CHECK(e.at_xy(0, 0) == 1.0);
    double total = 0.0;
    for (double v : e.data) total += v;
    CHECK(total == 1.0);
}

TEST_CASE("expansion is padding only: center crop recovers the input") {
    std::mt19937_64 rng(7);
    GrayImage img(9, 13);
    for (double& v : img.data) v = (rng() >> 11) * 0x1p-53;
    GrayImage e = expand_for_regular(img);
    const int pad = (img.width + 1) / 2;
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c) CHECK(e.at(c, r + pad) == img.at(c, r));
    // padded rows exactly zero
    for (int r = 0; r < pad; ++r)
        for (int c = 0; c < img.width; ++c) {
            CHECK(e.at(c, r) == 0.0);
            CHECK(e.at(c, e.height - 1 - r) == 0.0);
        }
}

TEST_CASE("expand_for_inverse matches the transpose identity") {
    GrayImage a(170, 428);
    GrayImage e = expand_for_inverse(a);
    CHECK(e.width == 598);
    CHECK(e.height == 428);

    GrayImage sq(100, 100);
    GrayImage esq = expand_for_inverse(sq);
    CHECK(esq.width == 200);
    CHECK(esq.height == 100);

    std::mt19937_64 rng(11);
    GrayImage b(8, 12);
    for (double& v : b.data) v = (rng() >> 11) * 0x1p-53;
    GrayImage lhs = expand_for_inverse(transpose(b));
    GrayImage rhs = transpose(expand_for_regular(b));
    REQUIRE(lhs.width == rhs.width);
    REQUIRE(lhs.height == rhs.height);
    for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(lhs.data[i] == rhs.data[i]);
}

TEST_CASE("transpose is an involution") {
    std::mt19937_64 rng(3);
    GrayImage img(7, 5);
    for (double& v : img.data) v = (rng() >> 11) * 0x1p-53;
    GrayImage t = transpose(img);
    CHECK(t.width == 5);
    CHECK(t.height == 7);
    CHECK(t.at(2, 3) == img.at(3, 2));
    GrayImage tt = transpose(t);
    REQUIRE(tt.width == img.width);
    for (std::size_t i = 0; i < img.size(); ++i) CHECK(tt.data[i] == img.data[i]);
}

TEST_CASE("horizontal unit ridge fills exactly the center row") {
    GrayImage img = synth_line(64, 64, 0.0, 0.0, 1.0, LineProfile::ridge, 1.0);
    for (int r = 0; r < 64; ++r)
        for (int c = 0; c < 64; ++c) CHECK(img.at(c, r) == (r == img.cy() ? 1.0 : 0.0));
}

TEST_CASE("ridge raster equals the per-pixel distance test") {
    auto check_line = [](double k, double b, double thickness) {
        GrayImage img = synth_line(64, 64, k, b, thickness);
        const double norm = std::sqrt(1.0 + k * k);
        for (int r = 0; r < 64; ++r)
            for (int c = 0; c < 64; ++c) {
                const double x = c - img.cx(), y = r - img.cy();
                const bool on = std::abs(y - k * x - b) / norm < thickness / 2.0;
                CHECK(img.at(c, r) == (on ? 1.0 : 0.0));
            }
    };
    check_line(std::sqrt(3.0), 40.0, 1.0);

    std::mt19937_64 rng(23);
    auto uni = [&] { return (rng() >> 11) * 0x1p-53; };
    for (int i = 0; i < 50; ++i) {
        const double k = 4.0 * uni() - 2.0;
        const double b = 30.0 * uni() - 15.0;
        const double t = 1.0 + 4.0 * uni();
        check_line(k, b, t);
    }
}

TEST_CASE("step profile fills the half plane below the line") {
    GrayImage img = synth_line(16, 16, 0.5, 1.0, 1.0, LineProfile::step, 1.0);
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) {
            const double x = c - img.cx(), y = r - img.cy();
            CHECK(img.at(c, r) == (y > 0.5 * x + 1.0 ? 1.0 : 0.0));
        }
}

TEST_CASE("degenerate sizes are rejected") {
    CHECK_THROWS_AS(synth_line(3, 64, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(synth_line(64, 2, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("noise parameter validation") {
    GrayImage img(8, 8, 0.5);
    CHECK_THROWS_AS(apply_noise(img, NoiseModel::gaussian(-0.1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(apply_noise(img, NoiseModel::salt_pepper(1.5, 1)), std::invalid_argument);
}

TEST_CASE("gaussian noise with zero variance is the identity") {
    GrayImage img = synth_line(32, 32, 0.25, 3.0);
    GrayImage out = apply_noise(img, NoiseModel::gaussian(0.0, 42));
    for (std::size_t i = 0; i < img.size(); ++i) CHECK(out.data[i] == img.data[i]);
}

TEST_CASE("full-density salt and pepper makes every pixel 0 or 1") {
    GrayImage img(20, 20, 0.5);
    GrayImage out = apply_noise(img, NoiseModel::salt_pepper(1.0, 9));
    for (double v : out.data) CHECK((v == 0.0 || v == 1.0));
}

TEST_CASE("salt and pepper corrupts an exact pixel count") {
    GrayImage img(100, 100, 0.5);
    GrayImage out = apply_noise(img, NoiseModel::salt_pepper(0.3, 1234));
    int corrupted = 0;
    for (double v : out.data) corrupted += (v != 0.5);
    CHECK(corrupted == 3000);
}

TEST_CASE("noise with equal seeds is bit-identical") {
    GrayImage img(32, 32, 0.4);
    for (auto model : {NoiseModel::gaussian(0.1, 77), NoiseModel::salt_pepper(0.3, 77),
                       NoiseModel::speckle(0.3, 77)}) {
        GrayImage a = apply_noise(img, model);
        GrayImage b = apply_noise(img, model);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.data[i] == b.data[i]);
    }
    GrayImage s = apply_noise(img, NoiseModel::speckle(0.0, 5));
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s.data[i] == img.data[i]);
}

TEST_CASE("occlusion disk") {
    GrayImage img(31, 31, 1.0);
    SECTION("zero diameter changes nothing") {
        GrayImage out = occlude_disk(img, 0, 0, 0.0, 0.0);
        for (double v : out.data) CHECK(v == 1.0);
    }
    SECTION("oversized disk covers everything") {
        const double d = 2.0 * std::sqrt(31.0 * 31.0 + 31.0 * 31.0);
        GrayImage out = occlude_disk(img, 0, 0, d, 0.25);
        for (double v : out.data) CHECK(v == 0.25);
    }
    SECTION("pixels strictly inside the radius are filled") {
        GrayImage out = occlude_disk(img, 2, -3, 10.0, 0.0);
        for (int r = 0; r < 31; ++r)
            for (int c = 0; c < 31; ++c) {
                const double dx = (c - img.cx()) - 2.0, dy = (r - img.cy()) + 3.0;
                CHECK(out.at(c, r) == (dx * dx + dy * dy < 25.0 ? 0.0 : 1.0));
            }
    }
}
