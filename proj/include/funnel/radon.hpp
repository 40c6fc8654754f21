#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "funnel/image.hpp"

namespace funnel {

/// Direct Radon sinogram over (rho, theta), rho in [-R, R] with
/// R = sqrt(W^2 + H^2)/2 and theta in [0, 180) degrees.
struct Sinogram {
    int n_rho = 0;
    int n_theta = 0;
    double rho_max = 0.0;
    std::vector<double> data;  // row-major, n_rho rows x n_theta cols

    double& at(int ri, int ti) { return data[static_cast<std::size_t>(ri) * n_theta + ti]; }
    double at(int ri, int ti) const { return data[static_cast<std::size_t>(ri) * n_theta + ti]; }
    double rho_of(int ri) const {
        return n_rho == 1 ? 0.0 : -rho_max + 2.0 * rho_max * ri / (n_rho - 1);
    }
    double theta_of(int ti) const { return 180.0 * ti / n_theta; }
    int rho_index(double rho) const {
        return static_cast<int>(std::lround((rho + rho_max) * (n_rho - 1) / (2.0 * rho_max)));
    }
    int theta_index(double theta_deg) const {
        int ti = static_cast<int>(std::lround(theta_deg * n_theta / 180.0));
        return ((ti % n_theta) + n_theta) % n_theta;
    }
};

/// Brute-force transform: each cell sums nearest-pixel samples at unit steps
/// along the line rho = x cos(theta) + y sin(theta). Kept deliberately plain;
/// this is the comparison baseline and test oracle, not a fast path.
inline Sinogram radon_direct(const GrayImage& img, int n_theta, int n_rho) {
    if (n_theta < 2 || n_rho < 2)
        throw std::invalid_argument("radon_direct: need at least 2 samples per axis");
    Sinogram sg;
    sg.n_rho = n_rho;
    sg.n_theta = n_theta;
    sg.rho_max = std::sqrt(static_cast<double>(img.width) * img.width +
                           static_cast<double>(img.height) * img.height) /
                 2.0;
    sg.data.assign(static_cast<std::size_t>(n_rho) * n_theta, 0.0);

    const int tlim = static_cast<int>(std::ceil(sg.rho_max));
    for (int ti = 0; ti < n_theta; ++ti) {
        const double theta = sg.theta_of(ti) * M_PI / 180.0;
        const double ct = std::cos(theta), st = std::sin(theta);
        for (int ri = 0; ri < n_rho; ++ri) {
            const double rho = sg.rho_of(ri);
            double sum = 0.0;
            for (int t = -tlim; t <= tlim; ++t) {
                const double x = rho * ct - t * st;
                const double y = rho * st + t * ct;
                const int col = static_cast<int>(std::lround(x)) + img.cx();
                const int row = static_cast<int>(std::lround(y)) + img.cy();
                if (col >= 0 && col < img.width && row >= 0 && row < img.height)
                    sum += img.at(col, row);
            }
            sg.at(ri, ti) = sum;
        }
    }
    return sg;
}

struct Sharpness {
    double conc3 = 0.0;       // fraction of total energy in the 3x3 around the peak
    double fwhm_axis1 = 0.0;  // half-max width along the first (column) axis, cells
    double fwhm_axis2 = 0.0;  // along the second (row) axis
};

/// Peak-sharpness metrics of a real 2D field (row-major, h rows x w cols).
/// Both metrics are taken on the energy (squared) field: conc3 is the energy
/// fraction of the 3x3 block, and the FWHM profiles are intensity profiles.
/// FWHM finds the first half-max crossings on each side of the peak with
/// linear interpolation; a profile that never drops below half is reported
/// as the full axis length.
inline Sharpness sharpness(const double* data, int w, int h, int peak_col, int peak_row) {
    auto at = [&](int c, int r) {
        const double v = data[static_cast<std::size_t>(r) * w + c];
        return v * v;
    };
    Sharpness s;
    double total = 0.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(w) * h; ++i) total += data[i] * data[i];
    double block = 0.0;
    for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
            const int c = peak_col + dc, r = peak_row + dr;
            if (c >= 0 && c < w && r >= 0 && r < h) block += at(c, r);
        }
    s.conc3 = total > 0.0 ? block / total : 0.0;

    const double halfmax = at(peak_col, peak_row) / 2.0;
    auto crossing = [&](auto value_at, int pos, int limit, int dir) -> double {
        double prev = value_at(pos);
        for (int i = pos + dir; i >= 0 && i < limit; i += dir) {
            const double v = value_at(i);
            if (v < halfmax) {
                const double frac = (prev - halfmax) / (prev - v);
                return std::abs(i - dir - pos) + frac;
            }
            prev = v;
        }
        return dir > 0 ? static_cast<double>(limit - 1 - pos) : static_cast<double>(pos);
    };
    auto col_profile = [&](int c) { return at(c, peak_row); };
    auto row_profile = [&](int r) { return at(peak_col, r); };
    s.fwhm_axis1 = crossing(col_profile, peak_col, w, +1) + crossing(col_profile, peak_col, w, -1);
    s.fwhm_axis2 = crossing(row_profile, peak_row, h, +1) + crossing(row_profile, peak_row, h, -1);
    return s;
}

}  // namespace funnel
