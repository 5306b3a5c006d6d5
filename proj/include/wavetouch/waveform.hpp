#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "wavetouch/errors.hpp"

namespace wavetouch {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Uniformly sampled real-valued time series (normalized acceleration units).
struct Waveform {
    std::vector<double> samples;
    double sample_rate_hz = 0.0;

    std::size_t size() const { return samples.size(); }
    double duration_s() const {
        return static_cast<double>(samples.size()) / sample_rate_hz;
    }
};

inline void validate(const Waveform& w) {
    if (w.samples.empty()) throw InputError("waveform: empty sample buffer");
    if (!(w.sample_rate_hz > 0.0))
        throw InputError("waveform: sample_rate_hz must be positive");
    for (double v : w.samples)
        if (!std::isfinite(v)) throw InputError("waveform: non-finite sample");
}

/// Linear frequency sweep parameters. Defaults cover the widest sweep used
/// by the material experiments (100-800 Hz over 2 s at 4096 Hz).
struct ChirpConfig {
    double f_start_hz = 100.0;
    double f_end_hz = 800.0;
    double duration_s = 2.0;
    double amplitude = 1.0;
    double sample_rate_hz = 4096.0;
};

inline void validate(const ChirpConfig& c) {
    if (!(c.f_start_hz > 0.0))
        throw ConfigError("chirp: f_start_hz must be positive");
    if (!(c.f_end_hz >= c.f_start_hz))
        throw ConfigError("chirp: f_end_hz must be >= f_start_hz");
    if (!(c.sample_rate_hz > 0.0))
        throw ConfigError("chirp: sample_rate_hz must be positive");
    if (!(c.f_end_hz < c.sample_rate_hz / 2.0))
        throw ConfigError("chirp: f_end_hz " + std::to_string(c.f_end_hz) +
                          " violates Nyquist limit of sample rate " +
                          std::to_string(c.sample_rate_hz));
    if (!(c.duration_s > 0.0))
        throw ConfigError("chirp: duration_s must be positive");
    if (!(c.amplitude > 0.0))
        throw ConfigError("chirp: amplitude must be positive");
    if (c.duration_s * c.sample_rate_hz < 16.0)
        throw ConfigError("chirp: fewer than 16 samples");
}

/// Synthesize a linear chirp. Sample i is
///   amplitude * sin(2*pi * (f0*t + (f1 - f0)*t^2 / (2*T))),  t = i / rate,
/// so the instantaneous frequency moves linearly from f0 at t=0 to f1 at t=T.
/// Length is round(duration_s * sample_rate_hz).
inline Waveform generate_chirp(const ChirpConfig& cfg) {
    validate(cfg);
    const auto n = static_cast<std::size_t>(
        std::llround(cfg.duration_s * cfg.sample_rate_hz));
    Waveform w;
    w.sample_rate_hz = cfg.sample_rate_hz;
    w.samples.resize(n);
    const double sweep_rate = (cfg.f_end_hz - cfg.f_start_hz) / cfg.duration_s;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / cfg.sample_rate_hz;
        const double phase = kTwoPi * (cfg.f_start_hz * t + 0.5 * sweep_rate * t * t);
        w.samples[i] = cfg.amplitude * std::sin(phase);
    }
    return w;
}

}  // namespace wavetouch
