#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "funnel/image.hpp"
#include "funnel/parallel.hpp"
#include "funnel/parammap.hpp"
#include "funnel/transform.hpp"

namespace funnel {

struct DetectConfig {
    int max_peaks = 10;            // per parameter space
    double threshold_ratio = 0.30; // fraction of the global maximum
    int neighborhood = 3;          // odd suppression box, >= 3
    int band_width = 5;            // odd verification band, in [3, 7]
    double verify_ratio = 1.0;     // contrast threshold in units of image stddev
    bool mask_boundaries = true;
    int threads = 1;

    void validate() const {
        if (max_peaks < 0) throw std::invalid_argument("DetectConfig: max_peaks must be >= 0");
        if (neighborhood < 3 || neighborhood % 2 == 0)
            throw std::invalid_argument("DetectConfig: neighborhood must be odd and >= 3");
        if (band_width < 3 || band_width > 7 || band_width % 2 == 0)
            throw std::invalid_argument("DetectConfig: band_width must be odd and in [3, 7]");
        if (threshold_ratio < 0.0 || threshold_ratio > 1.0)
            throw std::invalid_argument("DetectConfig: threshold_ratio must be in [0, 1]");
    }
};

/// List-based peak detection. Cells are visited in descending brightness
/// (ties by (m, n) lexicographic order); a cell is accepted only when no
/// already-visited cell lies in its neighborhood box, and every visited cell
/// suppresses later ones. Stops after max_peaks acceptances or when
/// brightness drops below the threshold.
///
/// The threshold defaults to threshold_ratio times this space's maximum;
/// detect_lines passes one absolute threshold shared by both spaces instead.
inline std::vector<PeakCell> detect_peaks(const ParameterSpace& space, const DetectConfig& cfg,
                                          std::optional<double> absolute_threshold = {}) {
    cfg.validate();
    const double threshold =
        absolute_threshold ? *absolute_threshold : cfg.threshold_ratio * space.max_magnitude();

    struct Cand {
        double brightness;
        int m, n;
    };
    std::vector<Cand> cands;
    for (int row = 0; row < space.height; ++row)
        for (int col = 0; col < space.width; ++col) {
            const double v = space.magnitudes[static_cast<std::size_t>(row) * space.width + col];
            if (v >= threshold && v > 0.0)
                cands.push_back({v, col - space.width / 2, row - space.height / 2});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.brightness != b.brightness) return a.brightness > b.brightness;
        if (a.m != b.m) return a.m < b.m;
        return a.n < b.n;
    });

    const int half = cfg.neighborhood / 2;
    std::vector<char> visited(space.magnitudes.size(), 0);
    auto visited_at = [&](int m, int n) -> char& {
        return visited[static_cast<std::size_t>(n + space.height / 2) * space.width +
                       (m + space.width / 2)];
    };
    std::vector<PeakCell> peaks;
    for (const Cand& c : cands) {
        if (static_cast<int>(peaks.size()) >= cfg.max_peaks) break;
        bool suppressed = false;
        for (int dn = -half; dn <= half && !suppressed; ++dn)
            for (int dm = -half; dm <= half; ++dm) {
                const int m = c.m + dm, n = c.n + dn;
                if (space.in_range(m, n) && visited_at(m, n)) {
                    suppressed = true;
                    break;
                }
            }
        visited_at(c.m, c.n) = 1;
        if (!suppressed) peaks.push_back({space.kind, c.m, c.n, c.brightness});
    }
    return peaks;
}

/// Zeroes small blocks at the cells of the two artificial boundary lines
/// introduced by the zero padding (horizontal at b = +-H/2 in the regular
/// space, vertical at b = +-W/2 in the inverse one).
inline ParameterSpace mask_boundary_artifacts(const ParameterSpace& space, int block = 3) {
    ParameterSpace out = space;
    const int half = std::max(1, block / 2);
    auto zero_block = [&](int m0, int n0) {
        for (int n = n0 - half; n <= n0 + half; ++n)
            for (int m = m0 - half; m <= m0 + half; ++m)
                if (out.in_range(m, n)) out.mag(m, n) = 0.0;
    };
    // The content edge sits between pixel rows when the source extent is odd,
    // so cover both flanking cells.
    const int extent =
        (space.kind == SpaceKind::regular) ? space.source_height : space.source_width;
    for (int edge : {-(extent / 2), (extent + 1) / 2}) {
        if (space.kind == SpaceKind::regular)
            zero_block(0, edge);
        else
            zero_block(edge, 0);
    }
    return out;
}

struct VerifyResult {
    bool verified = false;
    bool sampleable = true;  // false when the line barely intersects the image
    double score = 0.0;
    std::vector<double> profile;
};

namespace detail {

struct BandSampler {
    double px, py;  // anchor point on the line
    double dx, dy;  // unit direction
    double nx, ny;  // unit normal
    int tmin, tmax;

    BandSampler(const GrayImage& img, const LineModel& line) {
        line.point(px, py);
        line.direction(dx, dy);
        nx = -dy;
        ny = dx;
        // Parameter range covering the whole image rectangle.
        const double hw = img.width / 2.0 + 1.0, hh = img.height / 2.0 + 1.0;
        double lo = 0.0, hi = 0.0;
        bool first = true;
        for (double sx : {-hw, hw})
            for (double sy : {-hh, hh}) {
                const double t = (sx - px) * dx + (sy - py) * dy;
                if (first) {
                    lo = hi = t;
                    first = false;
                } else {
                    lo = std::min(lo, t);
                    hi = std::max(hi, t);
                }
            }
        tmin = static_cast<int>(std::floor(lo));
        tmax = static_cast<int>(std::ceil(hi));
    }

    // Nearest-pixel sample at signed arc length t and perpendicular offset o.
    bool sample(const GrayImage& img, int t, double o, double& value) const {
        const double x = px + t * dx + o * nx;
        const double y = py + t * dy + o * ny;
        const int col = static_cast<int>(std::lround(x)) + img.cx();
        const int row = static_cast<int>(std::lround(y)) + img.cy();
        if (col < 0 || col >= img.width || row < 0 || row >= img.height) return false;
        value = img.at(col, row);
        return true;
    }
};

}  // namespace detail

/// Band-integration check of a candidate line against the original image.
/// Means the intensity along the line at each perpendicular offset of the
/// band and scores the band's peak-to-peak contrast in units of the image's
/// global standard deviation, which fires on both ridge and step profiles
/// (a step's jump may straddle two offset bins, so peak-to-peak rather than
/// adjacent differences). A constant image scores 0.
inline VerifyResult verify_line(const GrayImage& img, const LineModel& line,
                                const DetectConfig& cfg) {
    cfg.validate();
    VerifyResult res;
    res.profile.assign(static_cast<std::size_t>(cfg.band_width), 0.0);

    const detail::BandSampler sampler(img, line);
    const int half = cfg.band_width / 2;
    std::vector<long> counts(static_cast<std::size_t>(cfg.band_width), 0);
    std::vector<double> sums(static_cast<std::size_t>(cfg.band_width), 0.0);
    for (int t = sampler.tmin; t <= sampler.tmax; ++t) {
        for (int o = -half; o <= half; ++o) {
            double v;
            if (sampler.sample(img, t, o, v)) {
                sums[o + half] += v;
                counts[o + half] += 1;
            }
        }
    }
    if (counts[half] < cfg.band_width) {
        res.sampleable = false;
        return res;
    }
    for (int o = 0; o < cfg.band_width; ++o)
        res.profile[o] = counts[o] > 0 ? sums[o] / counts[o] : 0.0;

    const double sigma = stddev(img);
    if (sigma <= 0.0) return res;  // featureless image, score 0
    const auto [lo, hi] = std::minmax_element(res.profile.begin(), res.profile.end());
    res.score = (*hi - *lo) / sigma;
    res.verified = res.score >= cfg.verify_ratio;
    return res;
}

struct LineExtent {
    double x0 = 0.0, y0 = 0.0;  // endpoints, centered pixels
    double x1 = 0.0, y1 = 0.0;
    double length = 0.0;  // pixels along the line
    int width = 0;        // profile bins above threshold
};

/// Endpoint, length and width estimate for a verified line: the band-mean
/// trace along the line is thresholded at half its peak-to-background range
/// and the longest run kept. Averaging across the band keeps the trace solid
/// when the decoded cell is a fraction of a pixel off the true line.
inline std::optional<LineExtent> estimate_extent(const GrayImage& img, const LineModel& line,
                                                 const DetectConfig& cfg) {
    cfg.validate();
    const detail::BandSampler sampler(img, line);
    const int half = cfg.band_width / 2;
    std::vector<std::pair<int, double>> trace;  // (t, band mean) for in-bounds samples
    for (int t = sampler.tmin; t <= sampler.tmax; ++t) {
        double sum = 0.0;
        int count = 0;
        for (int o = -half; o <= half; ++o) {
            double v;
            if (sampler.sample(img, t, o, v)) {
                sum += v;
                ++count;
            }
        }
        if (count > 0) trace.emplace_back(t, sum / count);
    }
    if (trace.empty()) return std::nullopt;

    // Peak level is a high percentile rather than the maximum, so crossings
    // with other lines do not inflate the threshold; the background folds in
    // the image floor because a full-crossing line leaves no background
    // samples in its own trace.
    std::vector<double> levels(trace.size());
    for (std::size_t i = 0; i < trace.size(); ++i) levels[i] = trace[i].second;
    const std::size_t pi = std::min(levels.size() - 1,
                                    static_cast<std::size_t>(0.9 * levels.size()));
    std::nth_element(levels.begin(), levels.begin() + pi, levels.end());
    const double peak = levels[pi];
    double background = trace[0].second;
    for (const auto& [t, v] : trace) background = std::min(background, v);
    for (double v : img.data) background = std::min(background, v);
    if (peak == 0.0 && background == 0.0) return std::nullopt;
    if (peak <= background) return std::nullopt;
    const double threshold = background + 0.5 * (peak - background);

    int best_start = -1, best_len = 0, run_start = -1, run_len = 0, prev_t = 0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto [t, v] = trace[i];
        const bool contiguous = run_len > 0 && t == prev_t + 1;
        if (v >= threshold) {
            if (!contiguous) {
                run_start = t;
                run_len = 0;
            }
            ++run_len;
            if (run_len > best_len) {
                best_len = run_len;
                best_start = run_start;
            }
        } else {
            run_len = 0;
        }
        prev_t = t;
    }
    if (best_len <= 0) return std::nullopt;

    LineExtent ext;
    const int t0 = best_start, t1 = best_start + best_len - 1;
    ext.x0 = sampler.px + t0 * sampler.dx;
    ext.y0 = sampler.py + t0 * sampler.dy;
    ext.x1 = sampler.px + t1 * sampler.dx;
    ext.y1 = sampler.py + t1 * sampler.dy;
    ext.length = static_cast<double>(best_len);

    const VerifyResult vr = verify_line(img, line, cfg);
    for (double p : vr.profile)
        if (p >= threshold) ++ext.width;
    return ext;
}

struct DetectedLine {
    LineModel line;
    PeakCell peak;
    bool verified = false;
    double score = 0.0;
    std::optional<LineExtent> extent;
};

/// Full pipeline: expand both ways, run the two transforms, mask boundary
/// artifacts, pick peaks against one shared absolute threshold, decode,
/// verify against the original image (wrapping aliases and false peaks drop
/// out here), deduplicate across spaces and sort by score.
inline std::vector<DetectedLine> detect_lines(const GrayImage& img, const DetectConfig& cfg) {
    cfg.validate();
    FunnelOptions fopts{false, cfg.threads};
    ParameterSpace regular = funnel_transform(expand_for_regular(img), fopts);
    ParameterSpace inverse = inverse_funnel_transform(expand_for_inverse(img), fopts);
    if (cfg.mask_boundaries) {
        regular = mask_boundary_artifacts(regular, cfg.neighborhood);
        inverse = mask_boundary_artifacts(inverse, cfg.neighborhood);
    }
    const double threshold =
        cfg.threshold_ratio * std::max(regular.max_magnitude(), inverse.max_magnitude());

    std::vector<PeakCell> peaks = detect_peaks(regular, cfg, threshold);
    std::vector<PeakCell> inv_peaks = detect_peaks(inverse, cfg, threshold);
    peaks.insert(peaks.end(), inv_peaks.begin(), inv_peaks.end());

    std::vector<DetectedLine> found(peaks.size());
    detail::parallel_for(peaks.size(), cfg.threads, [&](std::size_t i) {
        DetectedLine d;
        d.peak = peaks[i];
        d.line = peak_to_line(peaks[i], img.width, img.height);
        const VerifyResult vr = verify_line(img, d.line, cfg);
        d.verified = vr.verified;
        d.score = vr.score;
        if (d.verified) d.extent = estimate_extent(img, d.line, cfg);
        found[i] = d;
    });

    std::vector<DetectedLine> verified;
    for (auto& d : found)
        if (d.verified) verified.push_back(std::move(d));
    std::sort(verified.begin(), verified.end(), [](const DetectedLine& a, const DetectedLine& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.peak.space != b.peak.space) return a.peak.space == SpaceKind::regular;
        if (a.peak.m != b.peak.m) return a.peak.m < b.peak.m;
        return a.peak.n < b.peak.n;
    });
    std::vector<DetectedLine> kept;
    for (auto& d : verified) {
        bool duplicate = false;
        for (const auto& k : kept)
            if (same_geometry(d.line, k.line)) {
                duplicate = true;
                break;
            }
        if (!duplicate) kept.push_back(std::move(d));
    }
    return kept;
}

}  // namespace funnel
