#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "wavetouch/errors.hpp"
#include "wavetouch/simulate.hpp"
#include "wavetouch/spectrum.hpp"

namespace wavetouch {

/// Closed frequency interval [lo_hz, hi_hz].
struct FrequencyBand {
    double lo_hz = 0.0;
    double hi_hz = 0.0;

    bool contains(double f) const { return f >= lo_hz && f <= hi_hz; }
};

/// Analysis bands and smoothing width. Defaults: low band 100-400 Hz,
/// high band 400-800 Hz, 50 Hz boxcar.
struct BandConfig {
    FrequencyBand low{100.0, 400.0};
    FrequencyBand high{400.0, 800.0};
    double filter_width_hz = 50.0;
};

inline void validate(const BandConfig& b) {
    if (!(b.low.lo_hz >= 0.0 && b.low.lo_hz < b.low.hi_hz))
        throw ConfigError("bands: low band must satisfy 0 <= lo < hi");
    if (!(b.low.hi_hz <= b.high.lo_hz))
        throw ConfigError("bands: low band must end at or below the high band");
    if (!(b.high.lo_hz < b.high.hi_hz))
        throw ConfigError("bands: high band must satisfy lo < hi");
    if (!(b.filter_width_hz > 0.0))
        throw ConfigError("bands: filter_width_hz must be positive");
}

/// Received-minus-emitted spectrum on a shared grid. Values are signed:
/// negative means absorption, positive amplification.
struct DifferentialSpectrum {
    std::vector<double> values;
    double bin_width_hz = 0.0;

    std::size_t size() const { return values.size(); }
    double frequency_at(std::size_t bin) const {
        return static_cast<double>(bin) * bin_width_hz;
    }
};

/// The two classification features plus the notch magnitude.
struct FeatureVector {
    double low_peak_freq_hz = 0.0;
    double low_peak_mag = 0.0;      // signed differential value at the peak
    double high_trend_slope = 0.0;  // differential magnitude per Hz
};

/// Smooth both magnitude spectra with the given boxcar width, then subtract
/// emitted from received bin by bin.
inline DifferentialSpectrum differential_spectrum(const Spectrum& emitted,
                                                  const Spectrum& received,
                                                  double filter_width_hz) {
    if (emitted.size() != received.size() ||
        emitted.bin_width_hz != received.bin_width_hz)
        throw InputError("differential_spectrum: spectra are on different grids");
    const Spectrum se = uniform_filter(emitted, filter_width_hz);
    const Spectrum sr = uniform_filter(received, filter_width_hz);
    DifferentialSpectrum out;
    out.bin_width_hz = emitted.bin_width_hz;
    out.values.resize(emitted.size());
    for (std::size_t k = 0; k < out.values.size(); ++k)
        out.values[k] = sr.magnitudes[k] - se.magnitudes[k];
    return out;
}

namespace detail {

/// Indices of the bins whose centers fall inside the band. Throws when the
/// band extends past the grid or holds fewer than min_bins bins.
inline std::pair<std::size_t, std::size_t> band_bin_range(
    const DifferentialSpectrum& d, FrequencyBand band, std::size_t min_bins,
    const char* op) {
    if (d.values.empty()) throw InputError(std::string(op) + ": empty spectrum");
    const double last_freq = d.frequency_at(d.size() - 1);
    if (band.lo_hz < 0.0 || band.hi_hz > last_freq)
        throw InputError(std::string(op) + ": band outside the spectrum grid");
    const auto first =
        static_cast<std::size_t>(std::ceil(band.lo_hz / d.bin_width_hz - 1e-9));
    const auto last =
        static_cast<std::size_t>(std::floor(band.hi_hz / d.bin_width_hz + 1e-9));
    if (last < first || last - first + 1 < min_bins)
        throw InputError(std::string(op) + ": band holds fewer than " +
                         std::to_string(min_bins) + " bins");
    return {first, last};
}

}  // namespace detail

/// Bin of maximum absolute differential value within the band, returned as
/// (bin center frequency, signed value). Ties break toward the lowest
/// frequency.
inline std::pair<double, double> low_band_peak(const DifferentialSpectrum& d,
                                               FrequencyBand band) {
    const auto [first, last] = detail::band_bin_range(d, band, 3, "low_band_peak");
    std::size_t best = first;
    for (std::size_t k = first + 1; k <= last; ++k)
        if (std::abs(d.values[k]) > std::abs(d.values[best])) best = k;
    return {d.frequency_at(best), d.values[best]};
}

/// Ordinary least-squares slope of differential value vs frequency over the
/// band bins; the intercept is discarded.
inline double high_band_trend(const DifferentialSpectrum& d, FrequencyBand band) {
    const auto [first, last] = detail::band_bin_range(d, band, 2, "high_band_trend");
    const auto n = static_cast<double>(last - first + 1);
    double mean_f = 0.0, mean_v = 0.0;
    for (std::size_t k = first; k <= last; ++k) {
        mean_f += d.frequency_at(k);
        mean_v += d.values[k];
    }
    mean_f /= n;
    mean_v /= n;
    double cov = 0.0, var = 0.0;
    for (std::size_t k = first; k <= last; ++k) {
        const double df = d.frequency_at(k) - mean_f;
        cov += df * (d.values[k] - mean_v);
        var += df * df;
    }
    return cov / var;
}

/// Full per-trial pipeline: magnitude spectra of both channels, smoothed
/// differential, then the low-band peak and high-band trend.
inline FeatureVector extract_features(const Trial& t, const BandConfig& bands) {
    validate(bands);
    const DifferentialSpectrum diff = differential_spectrum(
        dft_magnitude(t.emitted), dft_magnitude(t.received), bands.filter_width_hz);
    const auto [peak_freq, peak_mag] = low_band_peak(diff, bands.low);
    FeatureVector fv;
    fv.low_peak_freq_hz = peak_freq;
    fv.low_peak_mag = peak_mag;
    fv.high_trend_slope = high_band_trend(diff, bands.high);
    return fv;
}

}  // namespace wavetouch
