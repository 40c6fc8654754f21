#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "funnel/detect.hpp"
#include "funnel/pgm.hpp"
#include "funnel/transform.hpp"

namespace funnel {

/// Min-max normalizes parameter-space magnitudes to 8 bits; the log flag
/// applies log(1 + x) first. Presentation only.
inline RawImage render_heatmap(const ParameterSpace& space, bool log_scale = false) {
    RawImage out;
    out.width = space.width;
    out.height = space.height;
    out.maxval = 255;
    out.pixels.resize(space.magnitudes.size());
    std::vector<double> vals(space.magnitudes);
    if (log_scale)
        for (double& v : vals) v = std::log1p(v);
    const auto [lo_it, hi_it] = std::minmax_element(vals.begin(), vals.end());
    const double lo = *lo_it, hi = *hi_it;
    const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i)
        out.pixels[i] = static_cast<std::uint16_t>(std::lround((vals[i] - lo) * scale));
    return out;
}

struct Rgb {
    std::uint8_t r, g, b;
};

inline constexpr Rgb kRegularColor{0, 200, 0};    // green
inline constexpr Rgb kInverseColor{150, 0, 24};   // carmine

namespace detail {

inline void put_px(std::vector<std::uint8_t>& rgb, int width, int height, int col, int row,
                   Rgb color) {
    if (col < 0 || col >= width || row < 0 || row >= height) return;
    const std::size_t i = (static_cast<std::size_t>(row) * width + col) * 3;
    rgb[i] = color.r;
    rgb[i + 1] = color.g;
    rgb[i + 2] = color.b;
}

inline void draw_segment(std::vector<std::uint8_t>& rgb, int width, int height, double x0,
                         double y0, double x1, double y1, Rgb color) {
    const double dx = x1 - x0, dy = y1 - y0;
    const int steps = std::max(1, static_cast<int>(std::ceil(std::max(std::abs(dx), std::abs(dy)))));
    for (int i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) / steps;
        const int col = static_cast<int>(std::lround(x0 + t * dx)) + width / 2;
        const int row = static_cast<int>(std::lround(y0 + t * dy)) + height / 2;
        put_px(rgb, width, height, col, row, color);
    }
}

}  // namespace detail

/// Grayscale background with detected lines drawn over it, green for the
/// regular space and carmine for the inverse one. Uses the estimated extent
/// when present, otherwise the full image crossing.
inline std::vector<std::uint8_t> render_overlay(const GrayImage& img,
                                                const std::vector<DetectedLine>& lines) {
    std::vector<std::uint8_t> rgb(static_cast<std::size_t>(img.width) * img.height * 3);
    for (std::size_t i = 0; i < img.size(); ++i) {
        const double v = std::min(1.0, std::max(0.0, img.data[i]));
        const auto g = static_cast<std::uint8_t>(std::lround(v * 255.0));
        rgb[3 * i] = g;
        rgb[3 * i + 1] = g;
        rgb[3 * i + 2] = g;
    }
    for (const auto& d : lines) {
        const Rgb color = d.peak.space == SpaceKind::regular ? kRegularColor : kInverseColor;
        double x0, y0, x1, y1;
        if (d.extent) {
            x0 = d.extent->x0;
            y0 = d.extent->y0;
            x1 = d.extent->x1;
            y1 = d.extent->y1;
        } else {
            double px, py, dx, dy;
            d.line.point(px, py);
            d.line.direction(dx, dy);
            const double reach = std::hypot(img.width, img.height);
            x0 = px - reach * dx;
            y0 = py - reach * dy;
            x1 = px + reach * dx;
            y1 = py + reach * dy;
        }
        detail::draw_segment(rgb, img.width, img.height, x0, y0, x1, y1, color);
    }
    return rgb;
}

}  // namespace funnel
