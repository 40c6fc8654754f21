#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "funnel/image.hpp"
#include "funnel/parallel.hpp"
#include "funnel/parammap.hpp"
#include "funnel/spectral.hpp"

namespace funnel {

/// Magnitude field over (slope index m, intercept index n) for the regular
/// kind, or (intercept index m, inverse-slope index n) for the inverse kind.
/// Both axes are centered. The pre-magnitude complex field can be retained
/// for diagnostics.
struct ParameterSpace {
    SpaceKind kind = SpaceKind::regular;
    int width = 0;   // m axis samples
    int height = 0;  // n axis samples
    int source_width = 0;
    int source_height = 0;
    std::vector<double> magnitudes;  // row-major, height x width
    std::optional<std::vector<cdouble>> field;

    double& mag(int m, int n) {
        return magnitudes[static_cast<std::size_t>(n + height / 2) * width + (m + width / 2)];
    }
    double mag(int m, int n) const {
        return magnitudes[static_cast<std::size_t>(n + height / 2) * width + (m + width / 2)];
    }
    bool in_range(int m, int n) const {
        return m >= -(width / 2) && m < width - width / 2 && n >= -(height / 2) &&
               n < height - height / 2;
    }
    double max_magnitude() const {
        double mx = 0.0;
        for (double v : magnitudes) mx = std::max(mx, v);
        return mx;
    }
    PeakCell argmax() const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < magnitudes.size(); ++i)
            if (magnitudes[i] > magnitudes[best]) best = i;
        const int col = static_cast<int>(best % width);
        const int row = static_cast<int>(best / width);
        return {kind, col - width / 2, row - height / 2, magnitudes[best]};
    }
};

struct FunnelOptions {
    bool keep_field = false;
    int threads = 1;
};

namespace detail {

// Shared core of the two transform directions. Input must already carry the
// zero padding of expand_for_regular; He = H + 2*ceil(W/2).
//
// Pipeline: (1) forward DFT along y per column; (2) scaled DFT along x per
// non-negative frequency row l with |s| = l / floor(He/2) (sign folded in so
// that a line y = kx + b lands at m = k W / 2, n = b); (3) negative rows by
// conjugate symmetry; (4) when He is even, the unpaired Nyquist row is
// replaced by its real part, which is the symmetric split of that bin and
// keeps the inverse transform real; (5) inverse DFT along l per column.
inline ComplexField funnel_field(const GrayImage& expanded, int threads) {
    const int w = expanded.width;
    const int he = expanded.height;
    const int pad2 = 2 * ((w + 1) / 2);
    if (he - pad2 < 4)
        throw std::invalid_argument(
            "funnel_transform: input does not look expanded (height must exceed width plus "
            "padding); call expand_for_regular first");

    ComplexField f = to_complex_field(expanded);
    f = dft_axis(f, Axis::y, Direction::forward, threads);

    const int half = he / 2;               // floor
    const int top = (he - 1) / 2;          // largest centered l with a mirror
    const double lmax = static_cast<double>(half);
    ComplexField g(w, he);
    g.xdom = Domain::frequency;
    g.ydom = Domain::frequency;

    detail::parallel_for(static_cast<std::size_t>(top) + 1, threads, [&](std::size_t li) {
        thread_local BluesteinWorkspace ws;
        thread_local std::vector<cdouble> in, out;
        in.resize(static_cast<std::size_t>(w));
        out.resize(static_cast<std::size_t>(w));
        const int l = static_cast<int>(li);
        const int row = l + half;
        for (int c = 0; c < w; ++c) in[c] = f.at(c, row);
        scaled_dft_bluestein(in.data(), out.data(), static_cast<std::size_t>(w), -l / lmax, ws);
        for (int c = 0; c < w; ++c) g.at(c, row) = out[c];
    });
    for (int l = 1; l <= top; ++l) {
        const int pos = l + half, neg = -l + half;
        for (int c = 0; c < w; ++c) g.at(c, neg) = std::conj(g.at(c, pos));
    }
    if (he % 2 == 0) {
        thread_local BluesteinWorkspace ws;
        std::vector<cdouble> in(w), out(w);
        for (int c = 0; c < w; ++c) in[c] = f.at(c, 0);
        scaled_dft_bluestein(in.data(), out.data(), static_cast<std::size_t>(w), 1.0, ws);
        for (int c = 0; c < w; ++c) g.at(c, 0) = out[c].real();
    }

    g = dft_axis(g, Axis::y, Direction::inverse, threads);
    return g;
}

inline ParameterSpace space_from_field(ComplexField&& g, SpaceKind kind, int src_w, int src_h,
                                       bool keep_field) {
    ParameterSpace ps;
    ps.kind = kind;
    ps.width = g.width;
    ps.height = g.height;
    ps.source_width = src_w;
    ps.source_height = src_h;
    ps.magnitudes.resize(g.data.size());
    for (std::size_t i = 0; i < g.data.size(); ++i) ps.magnitudes[i] = std::abs(g.data[i]);
    if (keep_field) ps.field = std::move(g.data);
    return ps;
}

}  // namespace detail

/// Funnel transform of an image expanded by expand_for_regular. The result
/// covers slope range (-1, 1]: an ideal line y = kx + b concentrates at
/// cell (m, n) = (k W / 2, b).
inline ParameterSpace funnel_transform(const GrayImage& expanded, FunnelOptions opts = {}) {
    ComplexField g = detail::funnel_field(expanded, opts.threads);
    const int src_h = expanded.height - 2 * ((expanded.width + 1) / 2);
    return detail::space_from_field(std::move(g), SpaceKind::regular, expanded.width, src_h,
                                    opts.keep_field);
}

/// Dual transform of an image expanded by expand_for_inverse; covers the
/// steep slope group. A line x = (1/k) y + b_x concentrates at
/// (m, n) = (b_x, (1/k) H / 2).
inline ParameterSpace inverse_funnel_transform(const GrayImage& expanded,
                                               FunnelOptions opts = {}) {
    // Same pipeline with the axes exchanged, then relabeled so that m is the
    // x-intercept axis and n the inverse-slope axis.
    GrayImage t = transpose(expanded);
    ComplexField g = detail::funnel_field(t, opts.threads);
    ComplexField flipped(g.height, g.width);
    flipped.xdom = g.ydom;
    flipped.ydom = g.xdom;
    for (int r = 0; r < g.height; ++r)
        for (int c = 0; c < g.width; ++c) flipped.at(r, c) = g.at(c, r);
    const int src_w = expanded.width - 2 * ((expanded.height + 1) / 2);
    return detail::space_from_field(std::move(flipped), SpaceKind::inverse, src_w,
                                    expanded.height, opts.keep_field);
}

}  // namespace funnel
