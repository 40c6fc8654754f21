#pragma once

#include <cmath>
#include <vector>

#include "funnel/image.hpp"
#include "funnel/parammap.hpp"

namespace funnel {

/// A synthetic image together with the lines drawn into it.
struct Scene {
    GrayImage image;
    std::vector<LineModel> truth;
};

/// Builds the line model for direction angle phi (degrees from the x axis)
/// at signed perpendicular offset rho from the center, choosing the
/// parameter form of the line's slope group.
inline LineModel line_from_angle_offset(double phi_deg, double rho) {
    const double phi = phi_deg * M_PI / 180.0;
    const double c = std::cos(phi), s = std::sin(phi);
    // Point closest to the origin: rho * (-sin, cos).
    const double px = -rho * s, py = rho * c;
    if (std::abs(s) > std::abs(c)) {
        const double inv_k = c / s;
        return LineModel::inverse_form(inv_k, px - inv_k * py);
    }
    const double k = s / c;
    return LineModel::slope_form(k, py - k * px);
}

inline void add_line_model(GrayImage& img, const LineModel& line, double thickness = 1.0,
                           LineProfile profile = LineProfile::ridge, double amplitude = 1.0) {
    if (line.is_inverse()) {
        GrayImage t = transpose(img);
        add_line(t, line.slope, line.intercept, thickness, profile, amplitude);
        img = transpose(t);
    } else {
        add_line(img, line.slope, line.intercept, thickness, profile, amplitude);
    }
}

/// Star of n full-crossing unit-amplitude ridge lines with evenly spread
/// directions and staggered offsets, the occlusion-benchmark scene.
inline Scene star_scene(int size, int n_lines = 8, double thickness = 1.0) {
    Scene scene;
    scene.image = GrayImage(size, size);
    const double offset = size / 6.0;
    for (int i = 0; i < n_lines; ++i) {
        const double phi = (i + 0.5) * 180.0 / n_lines;
        const double rho = (i % 2 == 0) ? offset : -offset;
        LineModel line = line_from_angle_offset(phi, rho);
        add_line_model(scene.image, line, thickness);
        scene.truth.push_back(line);
    }
    return scene;
}

/// One step-typical edge, the grayscale-gradient case that edge-detector
/// pipelines preprocess away.
inline Scene step_scene(int size) {
    Scene scene;
    scene.image = GrayImage(size, size);
    const LineModel edge = LineModel::slope_form(0.21, size * 0.16);
    add_line_model(scene.image, edge, 1.0, LineProfile::step, 1.0);
    scene.truth.push_back(edge);
    return scene;
}

/// Mixed-group scene with irrational-looking slopes, so that wrapped aliases
/// of one space smear instead of refocusing in the other.
inline Scene multiline_scene(int size) {
    Scene scene;
    scene.image = GrayImage(size, size);
    const std::vector<LineModel> lines = {
        LineModel::slope_form(0.37, size * 0.12),
        LineModel::slope_form(-0.68, -size * 0.18),
        LineModel::slope_form(0.11, -size * 0.30),
        LineModel::inverse_form(0.31, size * 0.22),   // k ~ 3.2
        LineModel::inverse_form(-0.74, -size * 0.08), // k ~ -1.35
        LineModel::inverse_form(0.05, -size * 0.25),  // near vertical
    };
    for (const auto& line : lines) {
        add_line_model(scene.image, line);
        scene.truth.push_back(line);
    }
    return scene;
}

}  // namespace funnel
