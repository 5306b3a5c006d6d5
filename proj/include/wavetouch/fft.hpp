#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "wavetouch/errors.hpp"
#include "wavetouch/waveform.hpp"

namespace wavetouch::fft {

using Complex = std::complex<double>;

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

/// In-place iterative radix-2 Cooley-Tukey. Size must be a power of two.
/// Twiddles come from per-element sin/cos of exactly reduced angles, which
/// keeps the rounding error well below the 1e-9 contract of dft_magnitude.
inline void fft_pow2(std::vector<Complex>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? kTwoPi : -kTwoPi) / static_cast<double>(len);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const Complex w = std::polar(1.0, ang * static_cast<double>(j));
                const Complex u = a[i + j];
                const Complex v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
}

/// Bluestein chirp-z transform for arbitrary sizes, via one power-of-two
/// circular convolution. The quadratic phase index is reduced mod 2n before
/// the trig call so large n keeps full angle precision.
inline void fft_bluestein(std::vector<Complex>& a, bool inverse) {
    const std::size_t n = a.size();
    const std::size_t m = next_pow2(2 * n - 1);
    const double sign = inverse ? 1.0 : -1.0;

    std::vector<Complex> w(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t sq = (static_cast<std::uint64_t>(k) * k) %
                                 (2 * static_cast<std::uint64_t>(n));
        w[k] = std::polar(1.0, sign * kPi * static_cast<double>(sq) /
                                   static_cast<double>(n));
    }

    std::vector<Complex> x(m, Complex{0.0, 0.0});
    std::vector<Complex> y(m, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * w[k];
    y[0] = std::conj(w[0]);
    for (std::size_t k = 1; k < n; ++k)
        y[k] = y[m - k] = std::conj(w[k]);

    fft_pow2(x, false);
    fft_pow2(y, false);
    for (std::size_t k = 0; k < m; ++k) x[k] *= y[k];
    fft_pow2(x, true);

    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * w[k] * scale;
}

}  // namespace detail

/// In-place complex DFT of arbitrary size. Forward is unnormalized,
/// inverse divides by N, so inverse(forward(x)) == x.
inline void transform(std::vector<Complex>& a, bool inverse = false) {
    const std::size_t n = a.size();
    if (n == 0) throw InputError("fft: empty input");
    if (n == 1) return;
    if (detail::is_pow2(n)) {
        detail::fft_pow2(a, inverse);
    } else {
        detail::fft_bluestein(a, inverse);
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& v : a) v *= scale;
    }
}

/// Two-sided complex spectrum of a real signal (unnormalized, size N).
inline std::vector<Complex> forward(const std::vector<double>& samples) {
    std::vector<Complex> a(samples.begin(), samples.end());
    transform(a, false);
    return a;
}

/// Real part of the inverse transform; the caller is responsible for the
/// spectrum being (numerically) Hermitian when a real signal is expected.
inline std::vector<double> inverse_real(std::vector<Complex> spectrum) {
    transform(spectrum, true);
    std::vector<double> out(spectrum.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = spectrum[i].real();
    return out;
}

}  // namespace wavetouch::fft
