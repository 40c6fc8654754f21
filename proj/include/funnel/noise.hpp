#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "funnel/image.hpp"

namespace funnel {

namespace detail {

// Uniform in (0, 1]; never returns 0 so it is safe under log().
inline double uniform_unit(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;
}

inline double gaussian_sample(std::mt19937_64& rng) {
    const double u1 = uniform_unit(rng);
    const double u2 = uniform_unit(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// Unbiased bounded draw by rejection; deterministic for a given seed on
// every platform (mt19937_64 output is specified by the standard).
inline std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % bound;
}

}  // namespace detail

enum class NoiseKind { gaussian, salt_pepper, speckle };

/// Seeded noise description. `amount` is the variance for gaussian and
/// speckle, the corrupted-pixel fraction for salt & pepper.
struct NoiseModel {
    NoiseKind kind = NoiseKind::gaussian;
    double amount = 0.0;
    std::uint64_t seed = 0;

    static NoiseModel gaussian(double variance, std::uint64_t seed) {
        return {NoiseKind::gaussian, variance, seed};
    }
    static NoiseModel salt_pepper(double density, std::uint64_t seed) {
        return {NoiseKind::salt_pepper, density, seed};
    }
    static NoiseModel speckle(double variance, std::uint64_t seed) {
        return {NoiseKind::speckle, variance, seed};
    }
};

/// Applies noise to a copy of the image. Gaussian adds N(0, variance) per
/// pixel; salt & pepper forces exactly round(density * W * H) pixels to 0 or
/// 1 (chosen by a seeded partial shuffle, so sweep curves are reproducible);
/// speckle multiplies by (1 + N(0, variance)). The result is not re-clamped.
inline GrayImage apply_noise(const GrayImage& img, const NoiseModel& model) {
    if (model.amount < 0.0) throw std::invalid_argument("apply_noise: amount must be >= 0");
    if (model.kind == NoiseKind::salt_pepper && model.amount > 1.0)
        throw std::invalid_argument("apply_noise: salt & pepper density must be <= 1");

    GrayImage out = img;
    std::mt19937_64 rng(model.seed);
    switch (model.kind) {
        case NoiseKind::gaussian: {
            if (model.amount == 0.0) return out;
            const double sigma = std::sqrt(model.amount);
            for (double& v : out.data) v += sigma * detail::gaussian_sample(rng);
            break;
        }
        case NoiseKind::speckle: {
            if (model.amount == 0.0) return out;
            const double sigma = std::sqrt(model.amount);
            for (double& v : out.data) v *= 1.0 + sigma * detail::gaussian_sample(rng);
            break;
        }
        case NoiseKind::salt_pepper: {
            const std::size_t n = out.size();
            const std::size_t count =
                static_cast<std::size_t>(std::llround(model.amount * static_cast<double>(n)));
            std::vector<std::size_t> idx(n);
            for (std::size_t i = 0; i < n; ++i) idx[i] = i;
            for (std::size_t i = 0; i < count; ++i) {
                const std::size_t j = i + detail::bounded_rand(rng, n - i);
                std::swap(idx[i], idx[j]);
                out.data[idx[i]] = (rng() & 1u) ? 1.0 : 0.0;
            }
            break;
        }
    }
    return out;
}

}  // namespace funnel
