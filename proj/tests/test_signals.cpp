#include "wavetouch/spectrum.hpp"
#include "wavetouch/waveform.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"

using namespace wavetouch;

namespace {

double max_rel_err(const std::vector<double>& got, const std::vector<double>& want) {
    REQUIRE(got.size() == want.size());
    double scale = 1.0;
    for (double v : want) scale = std::max(scale, std::abs(v));
    double worst = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i)
        worst = std::max(worst, std::abs(got[i] - want[i]) / scale);
    return worst;
}

std::vector<double> random_samples(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

}  // namespace

TEST_CASE("generate_chirp: degenerate sweep is a pure sine", "[signals]") {
    ChirpConfig cfg;
    cfg.f_start_hz = 200.0;
    cfg.f_end_hz = 200.0;
    cfg.duration_s = 1.0;
    cfg.sample_rate_hz = 4096.0;
    const Waveform w = generate_chirp(cfg);
    REQUIRE(w.samples.size() == 4096);
    const int crossings = oracles::count_zero_crossings(w.samples);
    CHECK(crossings >= 399);
    CHECK(crossings <= 401);
}

TEST_CASE("generate_chirp: default sweep length and bounds", "[signals]") {
    const ChirpConfig cfg;  // 100-800 Hz, 2 s, 4096 Hz
    const Waveform w = generate_chirp(cfg);
    REQUIRE(w.samples.size() == 8192);
    for (double v : w.samples) {
        REQUIRE(std::abs(v) <= cfg.amplitude);
        REQUIRE(std::isfinite(v));
    }
}

TEST_CASE("generate_chirp: instantaneous frequency from zero crossings", "[signals]") {
    const ChirpConfig cfg;  // 100-800 Hz over 2 s: f(1 s) = 450 Hz
    const Waveform w = generate_chirp(cfg);
    const auto times = oracles::zero_crossing_times(w.samples, w.sample_rate_hz);
    REQUIRE(times.size() > 2);
    // Adjacent crossings straddling t = 1 s span half a period.
    std::size_t i = 0;
    while (i + 1 < times.size() && times[i + 1] < 1.0) ++i;
    REQUIRE(i + 1 < times.size());
    const double f_est = 1.0 / (2.0 * (times[i + 1] - times[i]));
    CHECK(f_est == Catch::Approx(450.0).epsilon(0.05));
}

TEST_CASE("generate_chirp: length is round(duration * rate)", "[signals]") {
    ChirpConfig cfg;
    cfg.duration_s = 0.7501;
    cfg.sample_rate_hz = 1000.0;
    cfg.f_end_hz = 400.0;
    CHECK(generate_chirp(cfg).samples.size() == 750);
    cfg.duration_s = 0.7505;
    CHECK(generate_chirp(cfg).samples.size() == 751);  // 750.5 rounds away from zero
}

TEST_CASE("generate_chirp: configuration errors", "[signals]") {
    ChirpConfig cfg;
    cfg.f_end_hz = 2048.0;  // == Nyquist at 4096 Hz
    CHECK_THROWS_AS(generate_chirp(cfg), ConfigError);
    cfg = ChirpConfig{};
    cfg.f_start_hz = 0.0;
    CHECK_THROWS_AS(generate_chirp(cfg), ConfigError);
    cfg = ChirpConfig{};
    cfg.f_end_hz = 50.0;  // below f_start
    CHECK_THROWS_AS(generate_chirp(cfg), ConfigError);
    cfg = ChirpConfig{};
    cfg.duration_s = 0.001;  // fewer than 16 samples
    cfg.f_end_hz = 400.0;
    CHECK_THROWS_AS(generate_chirp(cfg), ConfigError);
    cfg = ChirpConfig{};
    cfg.amplitude = -1.0;
    CHECK_THROWS_AS(generate_chirp(cfg), ConfigError);
}

TEST_CASE("dft_magnitude: all-zero waveform", "[signals]") {
    Waveform w;
    w.sample_rate_hz = 64.0;
    w.samples.assign(64, 0.0);
    const Spectrum s = dft_magnitude(w);
    REQUIRE(s.magnitudes.size() == 33);
    for (double m : s.magnitudes) CHECK(m == 0.0);
}

TEST_CASE("dft_magnitude: pure sine lands on its exact bin", "[signals]") {
    Waveform w;
    w.sample_rate_hz = 4096.0;
    w.samples.resize(4096);
    for (std::size_t i = 0; i < w.samples.size(); ++i)
        w.samples[i] = std::sin(kTwoPi * 200.0 * static_cast<double>(i) / 4096.0);

    const Spectrum s = dft_magnitude(w);
    REQUIRE(s.bin_width_hz == 1.0);
    const auto it = std::max_element(s.magnitudes.begin(), s.magnitudes.end());
    const auto peak_bin = static_cast<std::size_t>(it - s.magnitudes.begin());
    CHECK(s.frequency_at(peak_bin) == 200.0);

    const auto want = oracles::naive_dft_magnitude(w.samples);
    CHECK(max_rel_err(s.magnitudes, want) < 1e-9);
}

TEST_CASE("dft_magnitude: constant signal is DC-only", "[signals]") {
    const double c = -0.73;
    Waveform w;
    w.sample_rate_hz = 100.0;
    w.samples.assign(50, c);
    const Spectrum s = dft_magnitude(w);
    CHECK(s.magnitudes[0] == Catch::Approx(50.0 * std::abs(c)).margin(1e-9));
    for (std::size_t k = 1; k < s.magnitudes.size(); ++k)
        CHECK(std::abs(s.magnitudes[k]) < 1e-9);
}

TEST_CASE("dft_magnitude: empty waveform rejected", "[signals]") {
    Waveform w;
    w.sample_rate_hz = 100.0;
    CHECK_THROWS_AS(dft_magnitude(w), InputError);
}

TEST_CASE("dft_magnitude matches the naive DFT on random waveforms", "[signals][property]") {
    std::mt19937 rng(20240601);
    std::uniform_int_distribution<std::size_t> len(16, 1024);
    for (int round = 0; round < 40; ++round) {
        Waveform w;
        w.sample_rate_hz = 4096.0;
        w.samples = random_samples(rng, len(rng));
        const Spectrum s = dft_magnitude(w);
        const auto want = oracles::naive_dft_magnitude(w.samples);
        REQUIRE(max_rel_err(s.magnitudes, want) < 1e-9);
    }
}

TEST_CASE("Parseval holds through the two-sided transform", "[signals][property]") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<std::size_t> len(16, 1024);
    for (int round = 0; round < 25; ++round) {
        const auto samples = random_samples(rng, len(rng));
        double time_energy = 0.0;
        for (double v : samples) time_energy += v * v;
        const auto full = wavetouch::fft::forward(samples);
        double freq_energy = 0.0;
        for (const auto& c : full) freq_energy += std::norm(c);
        freq_energy /= static_cast<double>(samples.size());
        REQUIRE(time_energy == Catch::Approx(freq_energy).epsilon(1e-9));
    }
}

TEST_CASE("dft_magnitude is homogeneous under scaling", "[signals][property]") {
    std::mt19937 rng(1234);
    const double scale = 2.5;
    for (std::size_t n : {33u, 128u, 501u}) {
        Waveform w;
        w.sample_rate_hz = 1000.0;
        w.samples = random_samples(rng, n);
        Waveform scaled = w;
        for (auto& v : scaled.samples) v *= scale;
        const Spectrum base = dft_magnitude(w);
        std::vector<double> want(base.magnitudes.size());
        for (std::size_t k = 0; k < want.size(); ++k) want[k] = scale * base.magnitudes[k];
        CHECK(max_rel_err(dft_magnitude(scaled).magnitudes, want) < 1e-9);
    }
}

TEST_CASE("uniform_filter: constant spectrum unchanged", "[signals]") {
    Spectrum s;
    s.bin_width_hz = 2.0;
    s.magnitudes.assign(40, 3.0);
    for (double width : {1.0, 7.0, 50.0, 1000.0}) {
        const Spectrum out = uniform_filter(s, width);
        for (double m : out.magnitudes) CHECK(m == Catch::Approx(3.0).margin(1e-12));
    }
}

TEST_CASE("uniform_filter: sub-bin width is the identity", "[signals]") {
    Spectrum s;
    s.bin_width_hz = 4.0;
    s.magnitudes = {5.0, 1.0, 4.0, 2.0, 8.0};
    const Spectrum out = uniform_filter(s, 3.9);
    CHECK(out.magnitudes == s.magnitudes);
}

TEST_CASE("uniform_filter: impulse spreads to 1/w_bins", "[signals]") {
    Spectrum s;
    s.bin_width_hz = 1.0;  // width 5 Hz -> w_bins = 5
    s.magnitudes.assign(30, 0.0);
    s.magnitudes[10] = 1.0;
    const Spectrum out = uniform_filter(s, 5.0);
    for (std::size_t k = 0; k < out.magnitudes.size(); ++k) {
        if (k >= 8 && k <= 12)
            CHECK(out.magnitudes[k] == Catch::Approx(0.2).margin(1e-15));
        else
            CHECK(out.magnitudes[k] == 0.0);
    }
}

TEST_CASE("uniform_filter equals the brute-force oracle bin-for-bin", "[signals][property]") {
    std::mt19937 rng(98765);
    std::uniform_real_distribution<double> mag(0.0, 10.0);
    std::uniform_int_distribution<std::size_t> len(1, 300);
    std::uniform_real_distribution<double> width(0.1, 120.0);
    for (int round = 0; round < 60; ++round) {
        Spectrum s;
        s.bin_width_hz = 0.5;
        s.magnitudes.resize(len(rng));
        for (auto& m : s.magnitudes) m = mag(rng);

        const double width_hz = width(rng);
        auto w_bins = static_cast<std::ptrdiff_t>(std::floor(width_hz / s.bin_width_hz));
        if (w_bins < 1) w_bins = 1;
        if (w_bins % 2 == 0) --w_bins;

        const Spectrum out = uniform_filter(s, width_hz);
        const auto want = oracles::brute_boxcar(s.magnitudes, w_bins);
        REQUIRE(out.magnitudes.size() == want.size());
        for (std::size_t k = 0; k < want.size(); ++k)
            REQUIRE(out.magnitudes[k] == want[k]);
    }
}
