#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "wavetouch/errors.hpp"
#include "wavetouch/fft.hpp"
#include "wavetouch/waveform.hpp"

namespace wavetouch {

/// One-sided magnitude spectrum on a uniform grid; bin k is centered at
/// k * bin_width_hz.
struct Spectrum {
    std::vector<double> magnitudes;
    double bin_width_hz = 0.0;

    std::size_t size() const { return magnitudes.size(); }
    double frequency_at(std::size_t bin) const {
        return static_cast<double>(bin) * bin_width_hz;
    }
};

/// One-sided DFT magnitude, bins 0..N/2. No zero padding: the transform runs
/// at the waveform's own length, so bin_width_hz = sample_rate_hz / N exactly.
inline Spectrum dft_magnitude(const Waveform& w) {
    validate(w);
    const std::size_t n = w.samples.size();
    std::vector<fft::Complex> full = fft::forward(w.samples);
    Spectrum s;
    s.bin_width_hz = w.sample_rate_hz / static_cast<double>(n);
    s.magnitudes.resize(n / 2 + 1);
    for (std::size_t k = 0; k <= n / 2; ++k) s.magnitudes[k] = std::abs(full[k]);
    return s;
}

/// Centered moving average over the magnitude grid. The window is the largest
/// odd bin count whose span fits in width_hz (minimum 1); edge bins average
/// over the available neighbors only, so the output length is unchanged.
inline Spectrum uniform_filter(const Spectrum& s, double width_hz) {
    if (!(width_hz > 0.0)) throw InputError("uniform_filter: width_hz must be positive");
    if (s.magnitudes.empty()) throw InputError("uniform_filter: empty spectrum");
    if (!(s.bin_width_hz > 0.0))
        throw InputError("uniform_filter: bin_width_hz must be positive");

    auto w_bins = static_cast<std::ptrdiff_t>(std::floor(width_hz / s.bin_width_hz));
    if (w_bins < 1) w_bins = 1;
    if (w_bins % 2 == 0) --w_bins;
    const std::ptrdiff_t half = (w_bins - 1) / 2;
    const auto n = static_cast<std::ptrdiff_t>(s.magnitudes.size());

    Spectrum out;
    out.bin_width_hz = s.bin_width_hz;
    out.magnitudes.resize(s.magnitudes.size());
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const std::ptrdiff_t lo = k - half < 0 ? 0 : k - half;
        const std::ptrdiff_t hi = k + half >= n ? n - 1 : k + half;
        double sum = 0.0;
        for (std::ptrdiff_t j = lo; j <= hi; ++j) sum += s.magnitudes[j];
        out.magnitudes[static_cast<std::size_t>(k)] =
            sum / static_cast<double>(hi - lo + 1);
    }
    return out;
}

}  // namespace wavetouch
