#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "funnel/fft.hpp"
#include "funnel/parallel.hpp"
#include "funnel/spectral.hpp"

namespace funnel {

/// Real volume with centered coordinates per axis, data indexed
/// (x fastest, then y, then z).
struct Volume3 {
    int nx = 0, ny = 0, nz = 0;
    std::vector<double> data;

    Volume3() = default;
    Volume3(int x, int y, int z) : nx(x), ny(y), nz(z) {
        if (x < 4 || y < 4 || z < 4)
            throw std::invalid_argument("Volume3: dimensions must be at least 4");
        data.assign(static_cast<std::size_t>(x) * y * z, 0.0);
    }
    double& at(int x, int y, int z) {
        return data[(static_cast<std::size_t>(z) * ny + y) * nx + x];
    }
    double at(int x, int y, int z) const {
        return data[(static_cast<std::size_t>(z) * ny + y) * nx + x];
    }
    double& at_c(int x, int y, int z) { return at(x + nx / 2, y + ny / 2, z + nz / 2); }
    double at_c(int x, int y, int z) const { return at(x + nx / 2, y + ny / 2, z + nz / 2); }
};

/// Plane z = a x + b y + c; the unambiguous group keeps |a|, |b| <= 1.
struct PlaneModel {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

/// Voxels with z - (ax + by + c) in [-0.5, 0.5) set to amplitude. The
/// half-open band resolves exact half-integer ties (e.g. a = 0.5 on odd x)
/// so that every (x, y) column holds exactly one voxel of the plane.
inline Volume3 synth_plane(int nx, int ny, int nz, const PlaneModel& plane,
                           double amplitude = 1.0) {
    Volume3 vol(nx, ny, nz);
    for (int z = 0; z < nz; ++z)
        for (int y = 0; y < ny; ++y)
            for (int x = 0; x < nx; ++x) {
                const double xc = x - nx / 2, yc = y - ny / 2, zc = z - nz / 2;
                const double resid = zc - (plane.a * xc + plane.b * yc + plane.c);
                if (resid >= -0.5 && resid < 0.5) vol.at(x, y, z) = amplitude;
            }
    return vol;
}

/// z-axis zero padding by ceil(max(nx, ny)/2) per side, the per-axis
/// analogue of the 2D expansion rule.
inline Volume3 expand_for_funnel3d(const Volume3& vol) {
    const int pad = (std::max(vol.nx, vol.ny) + 1) / 2;
    Volume3 out(vol.nx, vol.ny, vol.nz + 2 * pad);
    for (int z = 0; z < vol.nz; ++z)
        for (int y = 0; y < vol.ny; ++y)
            for (int x = 0; x < vol.nx; ++x) out.at(x, y, z + pad) = vol.at(x, y, z);
    return out;
}

/// Magnitude field over (slope index m along x, slope index n along y,
/// z-intercept index l); all axes centered.
struct ParameterField3 {
    int nx = 0, ny = 0, nz = 0;
    std::vector<double> magnitudes;
    std::optional<std::vector<cdouble>> field;

    double at(int x, int y, int z) const {
        return magnitudes[(static_cast<std::size_t>(z) * ny + y) * nx + x];
    }
    double at_c(int m, int n, int l) const { return at(m + nx / 2, n + ny / 2, l + nz / 2); }
    void argmax(int& m, int& n, int& l) const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < magnitudes.size(); ++i)
            if (magnitudes[i] > magnitudes[best]) best = i;
        const int x = static_cast<int>(best % nx);
        const int y = static_cast<int>((best / nx) % ny);
        const int z = static_cast<int>(best / (static_cast<std::size_t>(nx) * ny));
        m = x - nx / 2;
        n = y - ny / 2;
        l = z - nz / 2;
    }
};

/// 3D funnel transform of a z-padded volume. An ideal plane z = ax + by + c
/// concentrates at (m, n, l) = (a Nx / 2, b Ny / 2, c).
///
/// Same construction as the 2D transform: forward DFT along z, one scaled
/// DFT along x and one along y per non-negative z-frequency slab with
/// |s| = l / floor(Nze/2), conjugate fill of the negative slabs, real-part
/// symmetrization of an unpaired Nyquist slab, inverse DFT along z.
inline ParameterField3 funnel3d(const Volume3& padded, int threads = 1,
                               bool keep_field = false) {
    const int nx = padded.nx, ny = padded.ny, nze = padded.nz;
    const int pad2 = 2 * ((std::max(nx, ny) + 1) / 2);
    if (nze - pad2 < 4)
        throw std::invalid_argument(
            "funnel3d: volume does not look z-padded; call expand_for_funnel3d first");

    const std::size_t slab = static_cast<std::size_t>(nx) * ny;
    std::vector<cdouble> f(slab * nze);

    // Forward DFT along z per (x, y) column.
    detail::parallel_for(slab, threads, [&](std::size_t xy) {
        thread_local detail::BluesteinWorkspace ws;
        thread_local std::vector<cdouble> scratch;
        std::vector<cdouble> col(nze), res(nze);
        for (int z = 0; z < nze; ++z) col[z] = padded.data[slab * z + xy];
        detail::centered_dft(col.data(), res.data(), static_cast<std::size_t>(nze), -1, false, ws,
                             scratch);
        for (int z = 0; z < nze; ++z) f[slab * z + xy] = res[z];
    });

    const int half = nze / 2;
    const int top = (nze - 1) / 2;
    const double lmax = static_cast<double>(half);
    std::vector<cdouble> g(slab * nze);

    // Scaled DFT along x then y per slab; the positive sign convention of the
    // 3D derivation is folded into a negated scale.
    auto transform_slab = [&](int zrow, double s, bool take_real) {
        thread_local detail::BluesteinWorkspace ws;
        cdouble* out = &g[slab * zrow];
        const cdouble* in = &f[slab * zrow];
        std::vector<cdouble> row(nx), rowres(nx);
        for (int y = 0; y < ny; ++y) {
            for (int x = 0; x < nx; ++x) row[x] = in[static_cast<std::size_t>(y) * nx + x];
            detail::scaled_dft_bluestein(row.data(), rowres.data(), static_cast<std::size_t>(nx),
                                         s, ws);
            for (int x = 0; x < nx; ++x) out[static_cast<std::size_t>(y) * nx + x] = rowres[x];
        }
        std::vector<cdouble> colv(ny), colres(ny);
        for (int x = 0; x < nx; ++x) {
            for (int y = 0; y < ny; ++y) colv[y] = out[static_cast<std::size_t>(y) * nx + x];
            detail::scaled_dft_bluestein(colv.data(), colres.data(), static_cast<std::size_t>(ny),
                                         s, ws);
            for (int y = 0; y < ny; ++y)
                out[static_cast<std::size_t>(y) * nx + x] = take_real ? colres[y].real() : colres[y];
        }
    };

    detail::parallel_for(static_cast<std::size_t>(top) + 1, threads, [&](std::size_t li) {
        const int l = static_cast<int>(li);
        transform_slab(l + half, -l / lmax, false);
    });
    for (int l = 1; l <= top; ++l) {
        const cdouble* pos = &g[slab * (l + half)];
        cdouble* neg = &g[slab * (-l + half)];
        for (std::size_t i = 0; i < slab; ++i) neg[i] = std::conj(pos[i]);
    }
    if (nze % 2 == 0) transform_slab(0, 1.0, true);

    // Inverse DFT along z per (m, n) column.
    std::vector<cdouble> outfield(slab * nze);
    detail::parallel_for(slab, threads, [&](std::size_t xy) {
        thread_local detail::BluesteinWorkspace ws;
        thread_local std::vector<cdouble> scratch;
        std::vector<cdouble> col(nze), res(nze);
        for (int z = 0; z < nze; ++z) col[z] = g[slab * z + xy];
        detail::centered_dft(col.data(), res.data(), static_cast<std::size_t>(nze), +1, true, ws,
                             scratch);
        for (int z = 0; z < nze; ++z) outfield[slab * z + xy] = res[z];
    });

    ParameterField3 out;
    out.nx = nx;
    out.ny = ny;
    out.nz = nze;
    out.magnitudes.resize(outfield.size());
    for (std::size_t i = 0; i < outfield.size(); ++i) out.magnitudes[i] = std::abs(outfield[i]);
    if (keep_field) out.field = std::move(outfield);
    return out;
}

/// Decodes a 3D peak cell: a = 2m/Nx, b = 2n/Ny, c = l.
inline PlaneModel peak_to_plane(int m, int n, int l, int nx, int ny) {
    if (m < -(nx / 2) || m >= nx - nx / 2 || n < -(ny / 2) || n >= ny - ny / 2)
        throw std::out_of_range("peak_to_plane: slope index outside the sampled range");
    return {2.0 * m / nx, 2.0 * n / ny, static_cast<double>(l)};
}

}  // namespace funnel
