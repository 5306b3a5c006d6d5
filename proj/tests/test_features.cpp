#include "wavetouch/features.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "oracles.hpp"

using namespace wavetouch;

namespace {

Spectrum make_spectrum(std::vector<double> mags, double bin_width_hz) {
    Spectrum s;
    s.magnitudes = std::move(mags);
    s.bin_width_hz = bin_width_hz;
    return s;
}

DifferentialSpectrum make_diff(std::vector<double> values, double bin_width_hz) {
    DifferentialSpectrum d;
    d.values = std::move(values);
    d.bin_width_hz = bin_width_hz;
    return d;
}

TrialConfig noiseless_config() {
    TrialConfig cfg;
    cfg.noise_snr_db = std::nullopt;
    return cfg;
}

}  // namespace

TEST_CASE("differential_spectrum: identical inputs cancel", "[features]") {
    const Spectrum s = make_spectrum({1.0, 4.0, 2.0, 7.0, 3.0, 1.0}, 10.0);
    const auto d = differential_spectrum(s, s, 25.0);
    for (double v : d.values) CHECK(v == 0.0);
}

TEST_CASE("differential_spectrum: doubling gives the smoothed input back", "[features]") {
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> mag(0.0, 5.0);
    Spectrum emitted;
    emitted.bin_width_hz = 2.0;
    emitted.magnitudes.resize(120);
    for (auto& m : emitted.magnitudes) m = mag(rng);
    Spectrum received = emitted;
    for (auto& m : received.magnitudes) m *= 2.0;

    const auto d = differential_spectrum(emitted, received, 10.0);
    const Spectrum smoothed = uniform_filter(emitted, 10.0);
    for (std::size_t k = 0; k < d.values.size(); ++k)
        CHECK(d.values[k] == Catch::Approx(smoothed.magnitudes[k]).margin(1e-12));
}

TEST_CASE("differential_spectrum: grid mismatch rejected", "[features]") {
    const Spectrum a = make_spectrum({1.0, 2.0, 3.0}, 1.0);
    const Spectrum b = make_spectrum({1.0, 2.0, 3.0, 4.0}, 1.0);
    CHECK_THROWS_AS(differential_spectrum(a, b, 10.0), InputError);
    const Spectrum c = make_spectrum({1.0, 2.0, 3.0}, 2.0);
    CHECK_THROWS_AS(differential_spectrum(a, c, 10.0), InputError);
}

TEST_CASE("differential_spectrum is antisymmetric", "[features][property]") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> mag(0.0, 8.0);
    for (int round = 0; round < 20; ++round) {
        Spectrum a, b;
        a.bin_width_hz = b.bin_width_hz = 0.5;
        a.magnitudes.resize(200);
        b.magnitudes.resize(200);
        for (auto& m : a.magnitudes) m = mag(rng);
        for (auto& m : b.magnitudes) m = mag(rng);
        const auto ab = differential_spectrum(a, b, 17.0);
        const auto ba = differential_spectrum(b, a, 17.0);
        for (std::size_t k = 0; k < ab.values.size(); ++k)
            REQUIRE(ab.values[k] == -ba.values[k]);
    }
}

TEST_CASE("differential_spectrum: soft material is negative across the low band", "[features][slow]") {
    const Trial t = simulate_trial(*find_material("Silicone12"), noiseless_config(), 0);
    const auto d = differential_spectrum(dft_magnitude(t.emitted),
                                         dft_magnitude(t.received), 50.0);
    std::size_t total = 0, negative = 0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        const double f = d.frequency_at(k);
        if (f < 100.0 || f > 400.0) continue;
        ++total;
        if (d.values[k] < 0.0) ++negative;
    }
    REQUIRE(total > 0);
    CHECK(static_cast<double>(negative) >= 0.9 * static_cast<double>(total));
}

TEST_CASE("low_band_peak: single spike", "[features]") {
    std::vector<double> v(51, 0.0);
    v[25] = -5.0;  // 250 Hz at 10 Hz bins
    const auto [freq, mag] = low_band_peak(make_diff(v, 10.0), {100.0, 400.0});
    CHECK(freq == 250.0);
    CHECK(mag == -5.0);
}

TEST_CASE("low_band_peak: ties break toward the lower frequency", "[features]") {
    std::vector<double> v(51, 0.0);
    v[20] = -4.0;  // 200 Hz
    v[30] = 4.0;   // 300 Hz, same absolute value
    const auto [freq, mag] = low_band_peak(make_diff(v, 10.0), {100.0, 400.0});
    CHECK(freq == 200.0);
    CHECK(mag == -4.0);
}

TEST_CASE("low_band_peak: band errors", "[features]") {
    const auto d = make_diff(std::vector<double>(51, 1.0), 10.0);
    CHECK_THROWS_AS(low_band_peak(d, {400.0, 900.0}), InputError);   // past grid end
    CHECK_THROWS_AS(low_band_peak(d, {100.0, 115.0}), InputError);   // 2 bins only
}

TEST_CASE("low_band_peak ignores bins outside the band", "[features][property]") {
    std::vector<double> v(101, 0.0);
    v[37] = -2.5;
    const auto base = low_band_peak(make_diff(v, 5.0), {100.0, 400.0});
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double f = 5.0 * static_cast<double>(k);
        if (f < 100.0 || f > 400.0) v[k] += 100.0;
    }
    const auto shifted = low_band_peak(make_diff(v, 5.0), {100.0, 400.0});
    CHECK(base == shifted);
}

TEST_CASE("high_band_trend: constant differential has zero slope", "[features]") {
    const auto d = make_diff(std::vector<double>(100, 3.25), 10.0);
    CHECK(high_band_trend(d, {400.0, 800.0}) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("high_band_trend: exact linear data", "[features]") {
    std::vector<double> v(100);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = 0.01 * (10.0 * static_cast<double>(k));
    CHECK(high_band_trend(make_diff(v, 10.0), {400.0, 800.0}) ==
          Catch::Approx(0.01).margin(1e-9));
}

TEST_CASE("high_band_trend: offset invariance", "[features][property]") {
    std::mt19937 rng(404);
    std::uniform_real_distribution<double> val(-3.0, 3.0);
    std::vector<double> v(100);
    for (auto& x : v) x = val(rng);
    const double base = high_band_trend(make_diff(v, 10.0), {400.0, 800.0});
    for (auto& x : v) x += 17.5;
    const double offset = high_band_trend(make_diff(v, 10.0), {400.0, 800.0});
    CHECK(offset == Catch::Approx(base).margin(1e-12));
}

TEST_CASE("high_band_trend matches the normal-equations oracle", "[features][property]") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    for (int round = 0; round < 25; ++round) {
        // 16 bins spanning [400, 700] on a 20 Hz grid.
        std::vector<double> v(40, 0.0);
        std::vector<double> xs, ys;
        for (std::size_t k = 20; k <= 35; ++k) {
            v[k] = val(rng);
            xs.push_back(20.0 * static_cast<double>(k));
            ys.push_back(v[k]);
        }
        const double got = high_band_trend(make_diff(v, 20.0), {400.0, 700.0});
        const double want = oracles::normal_equations_slope(xs, ys);
        REQUIRE(got == Catch::Approx(want).margin(1e-9 * std::max(1.0, std::abs(want))));
    }
}

TEST_CASE("high_band_trend: fewer than two bins rejected", "[features]") {
    const auto d = make_diff(std::vector<double>(100, 1.0), 10.0);
    CHECK_THROWS_AS(high_band_trend(d, {400.0, 405.0}), InputError);
}

TEST_CASE("extract_features: identity channel gives null features", "[features]") {
    const MaterialSpec probe{"identity-probe", 1.0, 1.0};
    const Trial t =
        simulate_trial_with_gain(probe, [](double) { return 1.0; }, noiseless_config(), 0);
    const FeatureVector fv = extract_features(t, BandConfig{});
    CHECK(std::abs(fv.low_peak_mag) < 1e-6);
    CHECK(std::abs(fv.high_trend_slope) < 1e-9);
}

TEST_CASE("extract_features: deterministic", "[features]") {
    TrialConfig cfg;
    cfg.noise_snr_db = 20.0;
    cfg.seed = 7;
    const Trial t = simulate_trial(*find_material("FLEX"), cfg, 3);
    const FeatureVector a = extract_features(t, BandConfig{});
    const FeatureVector b = extract_features(t, BandConfig{});
    CHECK(a.low_peak_freq_hz == b.low_peak_freq_hz);
    CHECK(a.low_peak_mag == b.low_peak_mag);
    CHECK(a.high_trend_slope == b.high_trend_slope);
}

TEST_CASE("extract_features: peak frequency inside the configured band", "[features]") {
    TrialConfig cfg;
    cfg.noise_snr_db = 20.0;
    for (const auto& m : builtin_materials()) {
        const FeatureVector fv = extract_features(simulate_trial(m, cfg, 0), BandConfig{});
        CHECK(fv.low_peak_freq_hz >= 100.0);
        CHECK(fv.low_peak_freq_hz <= 400.0);
        CHECK(std::isfinite(fv.low_peak_mag));
        CHECK(std::isfinite(fv.high_trend_slope));
    }
}

TEST_CASE("extract_features: silicone notch sits below the PLA notch", "[features][slow]") {
    const TrialConfig cfg = noiseless_config();
    const FeatureVector soft =
        extract_features(simulate_trial(*find_material("Silicone12"), cfg, 0), BandConfig{});
    const FeatureVector rigid =
        extract_features(simulate_trial(*find_material("PLA"), cfg, 0), BandConfig{});
    CHECK(soft.low_peak_freq_hz < rigid.low_peak_freq_hz);
}

TEST_CASE("extract_features: trend slope is monotone in stiffness", "[features][slow]") {
    const TrialConfig cfg = noiseless_config();
    double prev = -1e9;
    for (const char* name :
         {"Silicone12", "Silicone18", "Silicone40", "FLEX", "TPU", "PLA"}) {
        const FeatureVector fv =
            extract_features(simulate_trial(*find_material(name), cfg, 0), BandConfig{});
        INFO(name << " slope " << fv.high_trend_slope);
        CHECK(fv.high_trend_slope > prev);
        prev = fv.high_trend_slope;
    }
}

TEST_CASE("extract_features: noiseless repeats are identical, 20 dB scatter is small",
          "[features][slow]") {
    const std::vector<MaterialSpec> six(builtin_materials().begin(),
                                        builtin_materials().begin() + 6);

    // Noiseless: every repeat of a material produces the same features.
    TrialConfig clean = noiseless_config();
    clean.num_trials = 50;
    const FeatureVector first =
        extract_features(simulate_trial(six[0], clean, 0), BandConfig{});
    for (int i = 1; i < clean.num_trials; ++i) {
        const FeatureVector fv =
            extract_features(simulate_trial(six[0], clean, i), BandConfig{});
        REQUIRE(fv.low_peak_freq_hz == first.low_peak_freq_hz);
        REQUIRE(fv.low_peak_mag == first.low_peak_mag);
        REQUIRE(fv.high_trend_slope == first.high_trend_slope);
    }

    // 20 dB SNR: per-feature scatter of Silicone12 stays under 20% of the
    // z-scored gap to its nearest material centroid.
    TrialConfig noisy;
    noisy.noise_snr_db = 20.0;
    noisy.seed = 2024;
    noisy.num_trials = 50;
    std::map<std::string, std::vector<std::array<double, 2>>> features;
    std::vector<std::array<double, 2>> all;
    for (const auto& m : six) {
        for (int i = 0; i < noisy.num_trials; ++i) {
            const FeatureVector fv =
                extract_features(simulate_trial(m, noisy, i), BandConfig{});
            features[m.name].push_back({fv.low_peak_freq_hz, fv.high_trend_slope});
            all.push_back(features[m.name].back());
        }
    }

    std::array<double, 2> mean{}, stddev{};
    for (int a = 0; a < 2; ++a) {
        for (const auto& f : all) mean[a] += f[a];
        mean[a] /= static_cast<double>(all.size());
        for (const auto& f : all) stddev[a] += (f[a] - mean[a]) * (f[a] - mean[a]);
        stddev[a] = std::sqrt(stddev[a] / static_cast<double>(all.size()));
        REQUIRE(stddev[a] > 0.0);
    }
    const auto normalize = [&](const std::array<double, 2>& f) {
        return std::array<double, 2>{(f[0] - mean[0]) / stddev[0],
                                     (f[1] - mean[1]) / stddev[1]};
    };

    std::map<std::string, std::array<double, 2>> centroid;
    for (const auto& [name, fs] : features) {
        std::array<double, 2> c{};
        for (const auto& f : fs) {
            const auto z = normalize(f);
            c[0] += z[0];
            c[1] += z[1];
        }
        c[0] /= static_cast<double>(fs.size());
        c[1] /= static_cast<double>(fs.size());
        centroid[name] = c;
    }

    double nearest_gap = 1e300;
    for (const auto& [name, c] : centroid) {
        if (name == "Silicone12") continue;
        const auto& s = centroid["Silicone12"];
        nearest_gap = std::min(nearest_gap, std::hypot(c[0] - s[0], c[1] - s[1]));
    }

    for (int a = 0; a < 2; ++a) {
        double m = 0.0, var = 0.0;
        std::vector<double> zs;
        for (const auto& f : features["Silicone12"]) zs.push_back(normalize(f)[a]);
        for (double z : zs) m += z;
        m /= static_cast<double>(zs.size());
        for (double z : zs) var += (z - m) * (z - m);
        const double sd = std::sqrt(var / static_cast<double>(zs.size()));
        INFO("feature " << a << " scatter " << sd << " vs gap " << nearest_gap);
        CHECK(sd < 0.2 * nearest_gap);
    }
}
