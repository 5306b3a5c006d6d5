#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "wavetouch/errors.hpp"
#include "wavetouch/fft.hpp"
#include "wavetouch/material.hpp"
#include "wavetouch/waveform.hpp"

namespace wavetouch {

/// Settings for one batch of synthetic emitter/receiver recordings.
struct TrialConfig {
    ChirpConfig chirp;
    double grip_force_n = 1.0;  // recorded metadata only; the model ignores it
    std::optional<double> noise_snr_db = 20.0;  // nullopt = noiseless
    std::uint64_t seed = 0;
    int num_trials = 1;
};

inline void validate(const TrialConfig& cfg) {
    validate(cfg.chirp);
    if (cfg.num_trials < 1) throw ConfigError("trial config: num_trials must be >= 1");
    if (!(cfg.grip_force_n > 0.0))
        throw ConfigError("trial config: grip_force_n must be positive");
}

/// One emitter/receiver recording pair plus the metadata that goes into
/// trial files.
struct Trial {
    MaterialSpec material;
    Waveform emitted;
    Waveform received;
    int trial_index = 0;
    double grip_force_n = 1.0;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::uint64_t mix_stream_seed(std::uint64_t seed, std::string_view material,
                                     int trial_index, std::string_view role) {
    std::uint64_t h = 14695981039346656037ull ^ (seed * 0x9E3779B97F4A7C15ull);
    const auto feed = [&h](std::string_view bytes) {
        for (unsigned char c : bytes) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0xFFu;  // field separator
        h *= 1099511628211ull;
    };
    feed(material);
    feed(role);
    feed(std::to_string(trial_index));
    return h;
}

/// Box-Muller on top of mt19937_64. Self-contained so noise streams do not
/// depend on the standard library's unspecified normal_distribution.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = kTwoPi * uniform01();
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    double uniform01() {
        return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }

    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline double rms(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc / static_cast<double>(v.size()));
}

inline void add_noise(std::vector<double>& samples, double snr_db,
                      std::uint64_t stream_seed) {
    const double sigma = rms(samples) * std::pow(10.0, -snr_db / 20.0);
    GaussianStream g(stream_seed);
    for (auto& s : samples) s += sigma * g.next();
}

}  // namespace detail

/// Channel gain as a function of frequency in Hz.
using GainFunction = std::function<double(double)>;

/// Generate one trial through an arbitrary gain curve. The received channel
/// is the clean chirp filtered in the frequency domain (one-sided gains
/// mirrored onto the conjugate half), each channel then getting its own
/// noise stream scaled to that channel's clean RMS.
inline Trial simulate_trial_with_gain(const MaterialSpec& material,
                                      const GainFunction& gain,
                                      const TrialConfig& cfg, int trial_index) {
    validate(cfg);
    validate(material);
    if (trial_index < 0) throw InputError("simulate: trial_index must be >= 0");

    const Waveform clean = generate_chirp(cfg.chirp);
    const std::size_t n = clean.samples.size();

    std::vector<fft::Complex> spec = fft::forward(clean.samples);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        const double f = static_cast<double>(k) * clean.sample_rate_hz /
                         static_cast<double>(n);
        spec[k] *= gain(f);
        if (k != 0 && 2 * k != n) spec[n - k] = std::conj(spec[k]);
    }

    Trial t;
    t.material = material;
    t.trial_index = trial_index;
    t.grip_force_n = cfg.grip_force_n;
    t.seed = cfg.seed;
    t.emitted = clean;
    t.received = Waveform{fft::inverse_real(std::move(spec)), clean.sample_rate_hz};

    if (cfg.noise_snr_db) {
        detail::add_noise(t.emitted.samples, *cfg.noise_snr_db,
                          detail::mix_stream_seed(cfg.seed, material.name,
                                                  trial_index, "emit"));
        detail::add_noise(t.received.samples, *cfg.noise_snr_db,
                          detail::mix_stream_seed(cfg.seed, material.name,
                                                  trial_index, "recv"));
    }
    return t;
}

/// Generate one trial through the material's calibrated transfer curve.
inline Trial simulate_trial(const MaterialSpec& material, const TrialConfig& cfg,
                            int trial_index) {
    return simulate_trial_with_gain(
        material, [&material](double f) { return transfer_magnitude(material, f); },
        cfg, trial_index);
}

/// cfg.num_trials trials per material, ordered by (material position, index).
inline std::vector<Trial> synth_dataset(const std::vector<MaterialSpec>& materials,
                                        const TrialConfig& cfg) {
    if (materials.empty()) throw InputError("synth_dataset: no materials given");
    validate(cfg);
    std::vector<Trial> out;
    out.reserve(materials.size() * static_cast<std::size_t>(cfg.num_trials));
    for (const auto& m : materials)
        for (int i = 0; i < cfg.num_trials; ++i)
            out.push_back(simulate_trial(m, cfg, i));
    return out;
}

}  // namespace wavetouch
