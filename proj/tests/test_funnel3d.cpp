#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "funnel/funnel3d.hpp"
#include "oracles.hpp"

using namespace funnel;
using oracle::cd;

TEST_CASE("synth_plane draws a single slab for a = b = c = 0") {
    Volume3 vol = synth_plane(8, 8, 8, {0.0, 0.0, 0.0});
    for (int z = 0; z < 8; ++z)
        for (int y = 0; y < 8; ++y)
            for (int x = 0; x < 8; ++x)
                CHECK(vol.at(x, y, z) == (z == 4 ? 1.0 : 0.0));
}

TEST_CASE("synth_plane equals the per-voxel inequality") {
    std::mt19937_64 rng(301);
    auto uni = [&] { return (rng() >> 11) * 0x1p-53; };
    for (int trial = 0; trial < 5; ++trial) {
        const PlaneModel p{2.0 * uni() - 1.0, 2.0 * uni() - 1.0, 6.0 * uni() - 3.0};
        Volume3 vol = synth_plane(12, 10, 14, p);
        for (int z = 0; z < 14; ++z)
            for (int y = 0; y < 10; ++y)
                for (int x = 0; x < 12; ++x) {
                    const double xc = x - 6, yc = y - 5, zc = z - 7;
                    const double resid = zc - (p.a * xc + p.b * yc + p.c);
                    const bool on = resid >= -0.5 && resid < 0.5;
                    CHECK(vol.at(x, y, z) == (on ? 1.0 : 0.0));
                }
    }
}

TEST_CASE("a plane in general position covers one voxel per column") {
    Volume3 vol = synth_plane(32, 32, 32, {0.5, -0.25, 3.0});
    long count = 0;
    for (double v : vol.data) count += v != 0.0;
    CHECK(count >= static_cast<long>(32 * 32 * 0.9));
    CHECK(count <= static_cast<long>(32 * 32 * 1.1));
}

TEST_CASE("zero volume transforms to a zero field") {
    ParameterField3 f = funnel3d(expand_for_funnel3d(Volume3(8, 8, 8)));
    for (double v : f.magnitudes) CHECK(v == 0.0);
}

TEST_CASE("plane with a = 0.5 peaks at (8, 0, 0) in a 32^3 volume") {
    Volume3 padded = expand_for_funnel3d(synth_plane(32, 32, 32, {0.5, 0.0, 0.0}));
    CHECK(padded.nz == 64);
    ParameterField3 f = funnel3d(padded);
    int m, n, l;
    f.argmax(m, n, l);
    CHECK(std::abs(m - 8) <= 1);
    CHECK(std::abs(n - 0) <= 1);
    CHECK(std::abs(l - 0) <= 1);
    const PlaneModel dec = peak_to_plane(8, 0, 0, 32, 32);
    CHECK(dec.a == 0.5);
    CHECK(dec.b == 0.0);
    CHECK(dec.c == 0.0);
}

TEST_CASE("fast 3D transform equals the dense per-axis oracle") {
    std::mt19937_64 rng(307);
    Volume3 vol(6, 5, 6);
    for (double& v : vol.data) v = (rng() >> 11) * 0x1p-53;
    Volume3 padded = expand_for_funnel3d(vol);
    ParameterField3 fast = funnel3d(padded, 1, true);
    std::vector<cd> direct = oracle::funnel3d_direct(padded);
    REQUIRE(fast.field.has_value());
    std::vector<cd> got(fast.field->begin(), fast.field->end());
    CHECK(oracle::rel_error(got, direct) < 1e-10);
}

TEST_CASE("point volume maps to a plane through (z0 + slopes)") {
    const int n = 16;
    Volume3 vol(n, n, n);
    const int x0 = 3, y0 = -2, z0 = 1;
    vol.at_c(x0, y0, z0) = 1.0;
    Volume3 padded = expand_for_funnel3d(vol);
    ParameterField3 f = funnel3d(padded);
    // per (m, n) column the max along z sits near z0 - (2 x0 / n) m - (2 y0 / n) n'
    for (int m = -(n / 2); m < n - n / 2; ++m)
        for (int nn = -(n / 2); nn < n - n / 2; ++nn) {
            double best = -1.0;
            int arg = 0;
            for (int l = -(padded.nz / 2); l < padded.nz - padded.nz / 2; ++l)
                if (f.at_c(m, nn, l) > best) {
                    best = f.at_c(m, nn, l);
                    arg = l;
                }
            const double expect = z0 - 2.0 * x0 * m / n - 2.0 * y0 * nn / n;
            CHECK(std::abs(arg - expect) <= 1.0);
        }
}

TEST_CASE("3D transform is linear and real after the conjugate fill") {
    std::mt19937_64 rng(311);
    Volume3 v1(5, 6, 5), v2(5, 6, 5);
    for (double& v : v1.data) v = (rng() >> 11) * 0x1p-53;
    for (double& v : v2.data) v = (rng() >> 11) * 0x1p-53;
    Volume3 mix(5, 6, 5);
    const double a = 1.7;
    for (std::size_t i = 0; i < mix.data.size(); ++i) mix.data[i] = a * v1.data[i] + v2.data[i];

    ParameterField3 f1 = funnel3d(expand_for_funnel3d(v1), 1, true);
    ParameterField3 f2 = funnel3d(expand_for_funnel3d(v2), 1, true);
    ParameterField3 fm = funnel3d(expand_for_funnel3d(mix), 1, true);
    std::vector<cd> combo(f1.field->size());
    for (std::size_t i = 0; i < combo.size(); ++i)
        combo[i] = a * (*f1.field)[i] + (*f2.field)[i];
    std::vector<cd> got(fm.field->begin(), fm.field->end());
    CHECK(oracle::rel_error(got, combo) < 1e-9);

    double max_re = 0.0, max_im = 0.0;
    for (const cd& c : *fm.field) {
        max_re = std::max(max_re, std::abs(c.real()));
        max_im = std::max(max_im, std::abs(c.imag()));
    }
    CHECK(max_im <= 1e-8 * max_re);
}

TEST_CASE("random planes decode within one cell per axis") {
    std::mt19937_64 rng(313);
    auto uni = [&] { return (rng() >> 11) * 0x1p-53; };
    const int n = 32;
    for (int trial = 0; trial < 5; ++trial) {
        const PlaneModel truth{1.8 * uni() - 0.9, 1.8 * uni() - 0.9,
                               std::floor(10.0 * uni() - 5.0)};
        Volume3 padded = expand_for_funnel3d(synth_plane(n, n, n, truth));
        ParameterField3 f = funnel3d(padded);
        int m, nn, l;
        f.argmax(m, nn, l);
        const PlaneModel dec = peak_to_plane(m, nn, l, n, n);
        CHECK(std::abs(dec.a - truth.a) <= 2.0 / n + 1e-9);
        CHECK(std::abs(dec.b - truth.b) <= 2.0 / n + 1e-9);
        CHECK(std::abs(dec.c - truth.c) <= 1.0 + 1e-9);
    }
}

TEST_CASE("peak_to_plane validates its indices") {
    CHECK_THROWS_AS(peak_to_plane(20, 0, 0, 32, 32), std::out_of_range);
    const PlaneModel p = peak_to_plane(0, 0, 0, 32, 32);
    CHECK(p.a == 0.0);
    CHECK(p.b == 0.0);
    CHECK(p.c == 0.0);
}
