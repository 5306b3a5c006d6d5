#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "wavetouch/errors.hpp"

namespace wavetouch {

/// A test subject: label, stiffness in MPa, and print infill fraction.
struct MaterialSpec {
    std::string name;
    double youngs_modulus_mpa = 1.0;
    double infill_fraction = 1.0;
};

inline void validate(const MaterialSpec& m) {
    if (m.name.empty()) throw InputError("material: empty name");
    if (!(m.youngs_modulus_mpa > 0.0))
        throw InputError("material '" + m.name + "': Young's modulus must be positive");
    if (!(m.infill_fraction >= 0.0 && m.infill_fraction <= 1.0))
        throw InputError("material '" + m.name + "': infill fraction must be in [0,1]");
}

/// Normalized stiffness coordinate. Moduli of interest span 0.4..3200 MPa,
/// so the log10 scale keeps the soft silicones apart.
inline double stiffness_coordinate(double youngs_modulus_mpa) {
    const double s = (std::log10(youngs_modulus_mpa) + 0.5) / 4.5;
    return std::clamp(s, 0.0, 1.0);
}

/// Catalog of the cube subjects: the six cast/printed materials at full
/// infill, plus the PLA infill-density sweep.
inline const std::vector<MaterialSpec>& builtin_materials() {
    static const std::vector<MaterialSpec> catalog = [] {
        std::vector<MaterialSpec> m = {
            {"Silicone12", 0.4, 1.0},   {"Silicone18", 0.664, 1.0},
            {"Silicone40", 1.696, 1.0}, {"FLEX", 63.7, 1.0},
            {"TPU", 67.0, 1.0},         {"PLA", 3200.0, 1.0},
        };
        for (int pct = 0; pct <= 100; pct += 20) {
            char name[32];
            std::snprintf(name, sizeof(name), "PLA-infill-%03d", pct);
            m.push_back({name, 3200.0, static_cast<double>(pct) / 100.0});
        }
        return m;
    }();
    return catalog;
}

inline const MaterialSpec* find_material(std::string_view name) {
    for (const auto& m : builtin_materials())
        if (m.name == name) return &m;
    return nullptr;
}

namespace response {

// Gain-curve calibration. The curve is a smooth function of frequency with
// one knob, the blended stiffness/infill coordinate r = s(E) * infill:
//   * a broad absorption plateau across the low band, fading as r grows,
//   * a localized Gaussian notch whose center climbs with r (the low-band
//     peak feature),
//   * a high-band tilt that runs from strong extra absorption (soft) to
//     mild amplification (rigid, >= ~400 MPa at full infill).
// The contrast warp spreads near-coincident moduli (FLEX at 63.7 MPa vs TPU
// at 67 MPa, a 0.5% gap in blended coordinates) far enough apart that both
// features stay separable under 20 dB measurement noise; its knee sits
// between those two moduli.

inline constexpr double kWarpGain = 0.35;
inline constexpr double kWarpCenter = 0.5145;
inline constexpr double kWarpWidth = 0.018;

inline constexpr double kPlateauDepth = 0.42;
inline constexpr double kPlateauExponent = 1.5;
inline constexpr double kPlateauRiseLoHz = 40.0;
inline constexpr double kPlateauRiseHiHz = 100.0;
inline constexpr double kPlateauFallLoHz = 400.0;
inline constexpr double kPlateauFallHiHz = 460.0;

inline constexpr double kNotchDepthMax = 0.16;
inline constexpr double kNotchDepthSlope = 0.35;
inline constexpr double kNotchCenterBaseHz = 130.0;
inline constexpr double kNotchCenterSpanHz = 270.0;
inline constexpr double kNotchSigmaHz = 36.0;

inline constexpr double kTiltSoft = -0.9;
inline constexpr double kTiltSpan = 1.3;
inline constexpr double kTiltRiseLoHz = 400.0;
inline constexpr double kTiltRiseHiHz = 800.0;

inline double smoothstep(double x, double lo, double hi) {
    const double t = std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
    return t * t * (3.0 - 2.0 * t);
}

inline double contrast_warp(double r) {
    const auto w = [](double v) {
        return v + kWarpGain * std::tanh((v - kWarpCenter) / kWarpWidth);
    };
    return (w(r) - w(0.0)) / (w(1.0) - w(0.0));
}

/// Blended and warped response coordinate in [0, 1].
inline double response_coordinate(const MaterialSpec& m) {
    return contrast_warp(stiffness_coordinate(m.youngs_modulus_mpa) *
                         m.infill_fraction);
}

}  // namespace response

/// Frequency response magnitude of the emitter-object-receiver channel.
/// Deterministic, continuous in f, and bounded away from zero.
inline double transfer_magnitude(const MaterialSpec& m, double freq_hz) {
    using namespace response;
    const double rho = response_coordinate(m);

    const double plateau = smoothstep(freq_hz, kPlateauRiseLoHz, kPlateauRiseHiHz) *
                           (1.0 - smoothstep(freq_hz, kPlateauFallLoHz, kPlateauFallHiHz));
    const double absorb = kPlateauDepth * std::pow(1.0 - rho, kPlateauExponent);

    const double center = kNotchCenterBaseHz + kNotchCenterSpanHz * rho;
    const double z = (freq_hz - center) / kNotchSigmaHz;
    const double notch =
        kNotchDepthMax * (1.0 - kNotchDepthSlope * rho) * std::exp(-0.5 * z * z);

    const double tilt = (kTiltSoft + kTiltSpan * rho) *
                        smoothstep(freq_hz, kTiltRiseLoHz, kTiltRiseHiHz);

    const double gain = 1.0 - absorb * plateau - notch + tilt;
    return std::max(gain, 0.0);
}

}  // namespace wavetouch
