#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace funnel {

/// Real-valued grayscale raster with centered coordinates.
///
/// Pixel (col, row) sits at x = col - floor(W/2), y = row - floor(H/2);
/// y grows downward with the row index. Synthetic images keep intensities
/// in [0, 1] but the container itself does not clamp.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> data;  // row-major

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0)
        : width(w), height(h), data(check_dims(w, h), fill) {}

    double& at(int col, int row) { return data[static_cast<std::size_t>(row) * width + col]; }
    double at(int col, int row) const { return data[static_cast<std::size_t>(row) * width + col]; }

    // Centered-coordinate access.
    int cx() const { return width / 2; }
    int cy() const { return height / 2; }
    double& at_xy(int x, int y) { return at(x + cx(), y + cy()); }
    double at_xy(int x, int y) const { return at(x + cx(), y + cy()); }
    bool in_bounds_xy(int x, int y) const {
        int c = x + cx(), r = y + cy();
        return c >= 0 && c < width && r >= 0 && r < height;
    }

    std::size_t size() const { return data.size(); }

private:
    static std::size_t check_dims(int w, int h) {
        if (w < 4 || h < 4)
            throw std::invalid_argument("GrayImage: dimensions must be at least 4x4, got " +
                                        std::to_string(w) + "x" + std::to_string(h));
        return static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    }
};

inline GrayImage transpose(const GrayImage& img) {
    GrayImage out(img.height, img.width);
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c) out.at(r, c) = img.at(c, r);
    return out;
}

/// Pads ceil(W/2) zero rows above and below, giving W x (H + 2*ceil(W/2)).
/// Centered coordinates of the original pixels are unchanged.
inline GrayImage expand_for_regular(const GrayImage& img) {
    int pad = (img.width + 1) / 2;
    GrayImage out(img.width, img.height + 2 * pad);
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c) out.at(c, r + pad) = img.at(c, r);
    return out;
}

/// Dual expansion: (W + 2*ceil(H/2)) x H, zero columns left and right.
inline GrayImage expand_for_inverse(const GrayImage& img) {
    return transpose(expand_for_regular(transpose(img)));
}

enum class LineProfile { ridge, step };

/// Draws y = kx + b into an existing image (centered pixel coordinates).
///
/// Ridge: pixels whose perpendicular distance to the line is < thickness/2
/// are set to amplitude. Step: pixels with y > kx + b are set. No
/// anti-aliasing; drawing is a plain overwrite so repeated calls compose
/// multi-line scenes.
inline void add_line(GrayImage& img, double k, double b, double thickness = 1.0,
                     LineProfile profile = LineProfile::ridge, double amplitude = 1.0) {
    if (!std::isfinite(k) || !std::isfinite(b))
        throw std::invalid_argument("add_line: slope and intercept must be finite");
    if (thickness < 1.0) throw std::invalid_argument("add_line: thickness must be >= 1");
    const double inv_norm = 1.0 / std::sqrt(1.0 + k * k);
    for (int row = 0; row < img.height; ++row) {
        const double y = row - img.cy();
        for (int col = 0; col < img.width; ++col) {
            const double x = col - img.cx();
            const double resid = y - k * x - b;
            if (profile == LineProfile::ridge) {
                if (std::abs(resid) * inv_norm < thickness / 2.0) img.at(col, row) = amplitude;
            } else {
                if (resid > 0.0) img.at(col, row) = amplitude;
            }
        }
    }
}

inline GrayImage synth_line(int width, int height, double k, double b, double thickness = 1.0,
                            LineProfile profile = LineProfile::ridge, double amplitude = 1.0) {
    GrayImage img(width, height);
    add_line(img, k, b, thickness, profile, amplitude);
    return img;
}

/// Sets pixels strictly inside the disk of the given diameter to `fill`.
/// Center is in centered pixel coordinates.
inline GrayImage occlude_disk(const GrayImage& img, double cx, double cy, double diameter,
                              double fill = 0.0) {
    if (diameter < 0.0) throw std::invalid_argument("occlude_disk: diameter must be >= 0");
    GrayImage out = img;
    const double r2 = (diameter / 2.0) * (diameter / 2.0);
    for (int row = 0; row < out.height; ++row) {
        const double y = row - out.cy();
        for (int col = 0; col < out.width; ++col) {
            const double x = col - out.cx();
            const double dx = x - cx, dy = y - cy;
            if (dx * dx + dy * dy < r2) out.at(col, row) = fill;
        }
    }
    return out;
}

inline double mean(const GrayImage& img) {
    double s = 0.0;
    for (double v : img.data) s += v;
    return s / static_cast<double>(img.size());
}

inline double stddev(const GrayImage& img) {
    const double mu = mean(img);
    double s = 0.0;
    for (double v : img.data) s += (v - mu) * (v - mu);
    return std::sqrt(s / static_cast<double>(img.size()));
}

}  // namespace funnel
