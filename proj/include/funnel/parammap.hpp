#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace funnel {

enum class SpaceKind { regular, inverse };

/// Line hypothesis in one of the two dual forms. Group one (|k| <= 1) uses
/// slope and y-intercept, group two uses inverse slope and x-intercept, so
/// every orientation has a form whose parameters stay in (-1, 1] x pixels.
struct LineModel {
    enum class Form { slope_intercept, inverse_slope_intercept };
    Form form = Form::slope_intercept;
    double slope = 0.0;      // k, or 1/k for the inverse form
    double intercept = 0.0;  // b_y, or b_x for the inverse form

    static LineModel slope_form(double k, double by) {
        return {Form::slope_intercept, k, by};
    }
    static LineModel inverse_form(double inv_k, double bx) {
        return {Form::inverse_slope_intercept, inv_k, bx};
    }
    bool is_inverse() const { return form == Form::inverse_slope_intercept; }

    // Unit direction of the line in (x, y).
    void direction(double& dx, double& dy) const {
        const double n = std::sqrt(1.0 + slope * slope);
        if (is_inverse()) {
            dx = slope / n;
            dy = 1.0 / n;
        } else {
            dx = 1.0 / n;
            dy = slope / n;
        }
    }
    // A point on the line (the intercept axis crossing).
    void point(double& x, double& y) const {
        if (is_inverse()) {
            x = intercept;
            y = 0.0;
        } else {
            x = 0.0;
            y = intercept;
        }
    }
};

/// One wrapping of a periodic parameter: value = period * multiplicity + wrapped.
struct WrapInfo {
    int multiplicity = 0;
    double wrapped = 0.0;
};

/// k = 2q + k~ with k~ in (-1, 1]. Values already in range stay unwrapped.
inline WrapInfo wrap_slope(double k) {
    if (!std::isfinite(k)) throw std::invalid_argument("wrap_slope: slope must be finite");
    const int q = static_cast<int>(std::ceil((k - 1.0) / 2.0));
    return {q, k - 2.0 * q};
}

inline double unwrap_slope(const WrapInfo& w) { return 2.0 * w.multiplicity + w.wrapped; }

/// b = N p + b~ with b~ in (-N/2, N/2].
inline WrapInfo wrap_intercept(double b, double n) {
    if (!(n > 0.0)) throw std::invalid_argument("wrap_intercept: period must be positive");
    if (!std::isfinite(b)) throw std::invalid_argument("wrap_intercept: value must be finite");
    const int p = static_cast<int>(std::ceil((b - n / 2.0) / n));
    return {p, b - n * p};
}

inline double unwrap_intercept(const WrapInfo& w, double n) {
    return n * w.multiplicity + w.wrapped;
}

/// Parameter-space local maximum. m indexes the first (column) axis of its
/// space, n the second (row) axis; both are centered.
struct PeakCell {
    SpaceKind space = SpaceKind::regular;
    int m = 0;
    int n = 0;
    double brightness = 0.0;
};

namespace detail {

inline int expanded_height(int width, int height) { return height + 2 * ((width + 1) / 2); }

inline bool in_centered_range(int idx, int len) {
    return idx >= -(len / 2) && idx < len - len / 2;
}

}  // namespace detail

/// Decodes a peak cell into a line. Regular space: k = 2m/W, b_y = n.
/// Inverse space: 1/k = 2n/H, b_x = m. W and H are the original image size.
inline LineModel peak_to_line(const PeakCell& cell, int width, int height) {
    if (cell.space == SpaceKind::regular) {
        const int he = detail::expanded_height(width, height);
        if (!detail::in_centered_range(cell.m, width) || !detail::in_centered_range(cell.n, he))
            throw std::out_of_range("peak_to_line: cell outside the regular space");
        return LineModel::slope_form(2.0 * cell.m / width, static_cast<double>(cell.n));
    }
    const int we = detail::expanded_height(height, width);
    if (!detail::in_centered_range(cell.m, we) || !detail::in_centered_range(cell.n, height))
        throw std::out_of_range("peak_to_line: cell outside the inverse space");
    return LineModel::inverse_form(2.0 * cell.n / height, static_cast<double>(cell.m));
}

/// Rounding inverse of peak_to_line; identity on exactly decodable cells.
inline PeakCell line_to_peak(const LineModel& line, int width, int height) {
    PeakCell cell;
    if (line.is_inverse()) {
        cell.space = SpaceKind::inverse;
        cell.m = static_cast<int>(std::lround(line.intercept));
        cell.n = static_cast<int>(std::lround(line.slope * height / 2.0));
    } else {
        cell.space = SpaceKind::regular;
        cell.m = static_cast<int>(std::lround(line.slope * width / 2.0));
        cell.n = static_cast<int>(std::lround(line.intercept));
    }
    return cell;
}

struct RhoTheta {
    double rho = 0.0;        // signed perpendicular offset from the center, pixels
    double theta_deg = 0.0;  // normal angle in [0, 180)
};

/// Angle-radius form rho = x cos(theta) + y sin(theta) of the line, with the
/// centered image origin.
inline RhoTheta line_to_rho_theta(const LineModel& line) {
    // Normal vector and signed offset for either parameterization.
    double nx, ny, rho;
    if (line.is_inverse()) {
        // x - (1/k) y - b_x = 0
        const double norm = std::sqrt(1.0 + line.slope * line.slope);
        nx = 1.0 / norm;
        ny = -line.slope / norm;
        rho = line.intercept / norm;
    } else {
        // -k x + y - b_y = 0
        const double norm = std::sqrt(1.0 + line.slope * line.slope);
        nx = -line.slope / norm;
        ny = 1.0 / norm;
        rho = line.intercept / norm;
    }
    double theta = std::atan2(ny, nx) * 180.0 / M_PI;
    if (theta < 0.0) {
        theta += 180.0;
        rho = -rho;
    }
    if (theta >= 180.0) {
        theta -= 180.0;
        rho = -rho;
    }
    return {rho, theta};
}

/// True when two hypotheses describe the same physical line within the given
/// angle and center-offset tolerances. Wrapped aliases of a line are distinct
/// geometry and compare false.
inline bool same_geometry(const LineModel& a, const LineModel& b, double tol_angle_deg = 2.0,
                          double tol_offset_px = 3.0) {
    const RhoTheta ra = line_to_rho_theta(a);
    const RhoTheta rb = line_to_rho_theta(b);
    double dtheta = std::abs(ra.theta_deg - rb.theta_deg);
    double drho = std::abs(ra.rho - rb.rho);
    if (dtheta > 90.0) {
        // Wrap across the theta = 0/180 seam; rho flips sign there.
        dtheta = 180.0 - dtheta;
        drho = std::abs(ra.rho + rb.rho);
    }
    return dtheta <= tol_angle_deg && drho <= tol_offset_px;
}

}  // namespace funnel
