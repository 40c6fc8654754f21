#pragma once

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <vector>

#include "funnel/fft.hpp"
#include "funnel/image.hpp"
#include "funnel/parallel.hpp"

namespace funnel {

using cdouble = detail::cdouble;

enum class Axis { x, y };
enum class Direction { forward, inverse };
enum class Domain { space, frequency };

/// Complex 2D field with centered indexing on both axes. The domain tags
/// record which axes are spatial and which are frequency after a transform.
struct ComplexField {
    int width = 0;
    int height = 0;
    std::vector<cdouble> data;  // row-major
    Domain xdom = Domain::space;
    Domain ydom = Domain::space;

    ComplexField() = default;
    ComplexField(int w, int h)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h) {}

    cdouble& at(int col, int row) { return data[static_cast<std::size_t>(row) * width + col]; }
    cdouble at(int col, int row) const { return data[static_cast<std::size_t>(row) * width + col]; }
};

inline ComplexField to_complex_field(const GrayImage& img) {
    ComplexField f(img.width, img.height);
    for (std::size_t i = 0; i < img.size(); ++i) f.data[i] = img.data[i];
    return f;
}

namespace detail {

// Cache-blocked transpose of a row-major w x h field into h x w.
inline void transpose_into(const std::vector<cdouble>& src, int w, int h,
                           std::vector<cdouble>& dst) {
    dst.resize(src.size());
    constexpr int kTile = 32;
    for (int r0 = 0; r0 < h; r0 += kTile)
        for (int c0 = 0; c0 < w; c0 += kTile) {
            const int rmax = std::min(r0 + kTile, h), cmax = std::min(c0 + kTile, w);
            for (int r = r0; r < rmax; ++r)
                for (int c = c0; c < cmax; ++c)
                    dst[static_cast<std::size_t>(c) * h + r] =
                        src[static_cast<std::size_t>(r) * w + c];
        }
}

// DFT over centered indices: out[l] = sum_y in[y] exp(sign j 2 pi l y / len),
// both l and y in [-floor(len/2), ceil(len/2)). Realized as index rotations
// around a standard 0-based transform, so no modulation roundoff is added.
inline void centered_dft(const cdouble* in, cdouble* out, std::size_t len, int sign,
                         bool normalize, BluesteinWorkspace& ws, std::vector<cdouble>& scratch) {
    const std::size_t h = len / 2;
    scratch.resize(len);
    for (std::size_t i = 0; i < len; ++i) scratch[i] = in[(i + h) % len];
    dft_arbitrary(scratch.data(), len, sign, ws);
    const double scale = normalize ? 1.0 / static_cast<double>(len) : 1.0;
    for (std::size_t i = 0; i < len; ++i) out[i] = scratch[(i + len - h) % len] * scale;
}

}  // namespace detail

/// Per-vector DFT along one axis. Forward uses the exp(-j 2 pi l y / len)
/// kernel; inverse carries the 1/len factor, so inverse(forward(f)) == f.
inline ComplexField dft_axis(const ComplexField& field, Axis axis, Direction dir,
                             int threads = 1) {
    ComplexField out = field;
    const int sign = (dir == Direction::forward) ? -1 : +1;
    const bool normalize = (dir == Direction::inverse);
    if (axis == Axis::x) {
        detail::parallel_for(static_cast<std::size_t>(field.height), threads, [&](std::size_t r) {
            thread_local detail::BluesteinWorkspace ws;
            thread_local std::vector<cdouble> scratch;
            detail::centered_dft(&field.data[r * field.width], &out.data[r * field.width],
                         static_cast<std::size_t>(field.width), sign, normalize, ws, scratch);
        });
        out.xdom = (dir == Direction::forward) ? Domain::frequency : Domain::space;
    } else {
        // Column transforms run on a blocked transpose so the inner DFTs see
        // contiguous memory.
        std::vector<cdouble> flipped, back;
        detail::transpose_into(field.data, field.width, field.height, flipped);
        detail::parallel_for(static_cast<std::size_t>(field.width), threads, [&](std::size_t c) {
            thread_local detail::BluesteinWorkspace ws;
            thread_local std::vector<cdouble> scratch, res;
            res.resize(static_cast<std::size_t>(field.height));
            cdouble* row = &flipped[c * static_cast<std::size_t>(field.height)];
            detail::centered_dft(row, res.data(), static_cast<std::size_t>(field.height), sign,
                                 normalize, ws, scratch);
            std::copy(res.begin(), res.end(), row);
        });
        detail::transpose_into(flipped, field.height, field.width, back);
        out.data = std::move(back);
        out.ydom = (dir == Direction::forward) ? Domain::frequency : Domain::space;
    }
    return out;
}

/// Scaled DFT on the same centered grid:
///   G[m] = sum_n f[n] exp(-j (2 pi / len) s m n),  m, n centered.
///
/// For s != 0 this is the spectrum of the band-limited resampling
/// f(x / s) with the |s| amplitude factor omitted; s = 0 collapses every
/// bin to sum(f). Computed with the Bluestein chirp factorization in
/// O(len log len); |s| > 1 would need data beyond the sampled band and is
/// rejected.
inline std::vector<cdouble> scaled_dft(const std::vector<cdouble>& f, double s) {
    if (!(std::abs(s) <= 1.0))
        throw std::invalid_argument("scaled_dft: |s| must be <= 1");
    if (f.empty()) return {};
    std::vector<cdouble> out(f.size());
    detail::BluesteinWorkspace ws;
    detail::scaled_dft_bluestein(f.data(), out.data(), f.size(), s, ws);
    return out;
}

inline std::vector<cdouble> scaled_dft(const std::vector<double>& f, double s) {
    std::vector<cdouble> cf(f.begin(), f.end());
    return scaled_dft(cf, s);
}

}  // namespace funnel
