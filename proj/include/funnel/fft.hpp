#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <mutex>
#include <vector>

namespace funnel::detail {

using cdouble = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

inline unsigned log2_exact(std::size_t n) {
    unsigned k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    return k;
}

// Shared twiddle tables, one per power-of-two length. Thread-safe and built
// once per process.
inline const std::vector<cdouble>& twiddles(std::size_t n) {
    static std::array<std::vector<cdouble>, 32> tables;
    static std::array<std::once_flag, 32> flags;
    const unsigned k = log2_exact(n);
    std::call_once(flags[k], [&] {
        std::vector<cdouble>& t = tables[k];
        t.resize(n / 2);
        for (std::size_t j = 0; j < n / 2; ++j) {
            const double ang = -2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
            t[j] = {std::cos(ang), std::sin(ang)};
        }
    });
    return tables[k];
}

// In-place iterative radix-2 transform, unnormalized.
// sign = -1 gives the forward kernel exp(-j 2 pi k n / N).
inline void fft_pow2(cdouble* a, std::size_t n, int sign) {
    if (n < 2) return;
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const std::vector<cdouble>& w = twiddles(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                cdouble tw = w[j * step];
                if (sign > 0) tw = std::conj(tw);
                const cdouble u = a[i + j];
                const cdouble v = a[i + j + len / 2] * tw;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
}

// Scratch buffers for one Bluestein evaluation, reusable across calls.
struct BluesteinWorkspace {
    std::vector<cdouble> a, b;
};

// Chirp factor exp(-j pi s t^2 / len) with the phase reduced mod 2 pi before
// the trig calls to keep large-index accuracy.
inline cdouble chirp(double s, double t, std::size_t len) {
    const double cycles = std::fmod(s * t * t / (2.0 * static_cast<double>(len)), 1.0);
    const double ang = -2.0 * M_PI * cycles;
    return {std::cos(ang), std::sin(ang)};
}

// Scaled DFT over centered indices via the Bluestein factorization
//   exp(-j (2 pi / len) s m n) = c(m) c(n) conj(c(m - n)),
// realized as one circular convolution of power-of-two length >= 2*len - 1.
// Input and output are centered: index i holds m = i - floor(len/2).
inline void scaled_dft_bluestein(const cdouble* in, cdouble* out, std::size_t len, double s,
                                 BluesteinWorkspace& ws) {
    const std::size_t m = next_pow2(2 * len - 1);
    const long offset = -static_cast<long>(len / 2);
    ws.a.assign(m, cdouble{});
    ws.b.assign(m, cdouble{});
    for (std::size_t i = 0; i < len; ++i) {
        const double n = static_cast<double>(static_cast<long>(i) + offset);
        ws.a[i] = in[i] * chirp(s, n, len);
    }
    for (std::size_t t = 0; t < len; ++t) {
        const cdouble bc = std::conj(chirp(s, static_cast<double>(t), len));
        ws.b[t] = bc;
        if (t != 0) ws.b[m - t] = bc;
    }
    fft_pow2(ws.a.data(), m, -1);
    fft_pow2(ws.b.data(), m, -1);
    for (std::size_t i = 0; i < m; ++i) ws.a[i] *= ws.b[i];
    fft_pow2(ws.a.data(), m, +1);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < len; ++i) {
        const double mm = static_cast<double>(static_cast<long>(i) + offset);
        out[i] = ws.a[i] * scale * chirp(s, mm, len);
    }
}

// Standard 0-based DFT of arbitrary length: chirp transform with s = 1 in
// 0-based indexing. sign = -1 forward, +1 inverse kernel (unnormalized).
inline void dft_arbitrary(cdouble* data, std::size_t len, int sign, BluesteinWorkspace& ws) {
    if (is_pow2(len)) {
        fft_pow2(data, len, sign);
        return;
    }
    const std::size_t m = next_pow2(2 * len - 1);
    const double s = static_cast<double>(-sign);  // forward uses the -j kernel
    ws.a.assign(m, cdouble{});
    ws.b.assign(m, cdouble{});
    for (std::size_t i = 0; i < len; ++i)
        ws.a[i] = data[i] * chirp(s, static_cast<double>(i), len);
    for (std::size_t t = 0; t < len; ++t) {
        const cdouble bc = std::conj(chirp(s, static_cast<double>(t), len));
        ws.b[t] = bc;
        if (t != 0) ws.b[m - t] = bc;
    }
    fft_pow2(ws.a.data(), m, -1);
    fft_pow2(ws.b.data(), m, -1);
    for (std::size_t i = 0; i < m; ++i) ws.a[i] *= ws.b[i];
    fft_pow2(ws.a.data(), m, +1);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < len; ++i)
        data[i] = ws.a[i] * scale * chirp(s, static_cast<double>(i), len);
}

}  // namespace funnel::detail
