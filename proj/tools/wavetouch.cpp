// wavetouch — synthesize, analyze, and classify vibro-tactile chirp trials.
//
// Subcommands: synth, analyze, train, classify, map. Exit codes: 0 on
// success, 1 on input errors (bad files/data), 2 on configuration errors
// (bad flags, invalid sweep settings).

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "wavetouch/wavetouch.hpp"

namespace fs = std::filesystem;
using namespace wavetouch;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t at = text.find(sep, start);
        parts.push_back(text.substr(start, at - start));
        if (at == std::string::npos) break;
        start = at + 1;
    }
    return parts;
}

FrequencyBand parse_band(const std::string& text, const std::string& flag) {
    const auto parts = split(text, ':');
    if (parts.size() != 2)
        throw ConfigError(flag + ": expected LO:HI, got '" + text + "'");
    FrequencyBand band;
    band.lo_hz = detail::parse_double(parts[0], flag);
    band.hi_hz = detail::parse_double(parts[1], flag);
    return band;
}

std::vector<MaterialSpec> resolve_materials(const std::string& spec) {
    const auto& catalog = builtin_materials();
    if (spec == "builtin")
        return {catalog.begin(), catalog.begin() + 6};
    if (spec == "builtin-infill") {
        std::vector<MaterialSpec> out;
        for (const auto& m : catalog)
            if (m.name.starts_with("PLA-infill-")) out.push_back(m);
        return out;
    }
    std::vector<MaterialSpec> out;
    for (const auto& name : split(spec, ',')) {
        const MaterialSpec* m = find_material(name);
        if (m == nullptr)
            throw ConfigError("unknown material '" + name +
                              "' (see README for the builtin catalog)");
        out.push_back(*m);
    }
    return out;
}

struct SynthArgs {
    std::string materials = "builtin";
    int trials = 50;
    double snr_db = 20.0;
    bool noiseless = false;
    std::uint64_t seed = 0;
    std::string out_dir;
    double f_start = 100.0, f_end = 800.0, duration = 2.0, rate = 4096.0;
    double amplitude = 1.0, grip_force = 1.0;
};

int run_synth(const SynthArgs& args) {
    TrialConfig cfg;
    cfg.chirp.f_start_hz = args.f_start;
    cfg.chirp.f_end_hz = args.f_end;
    cfg.chirp.duration_s = args.duration;
    cfg.chirp.sample_rate_hz = args.rate;
    cfg.chirp.amplitude = args.amplitude;
    cfg.grip_force_n = args.grip_force;
    cfg.noise_snr_db = args.noiseless ? std::nullopt : std::optional(args.snr_db);
    cfg.seed = args.seed;
    cfg.num_trials = args.trials;
    validate(cfg);

    const auto materials = resolve_materials(args.materials);
    fs::create_directories(args.out_dir);
    for (const auto& m : materials) {
        for (int i = 0; i < cfg.num_trials; ++i) {
            const Trial t = simulate_trial(m, cfg, i);
            char suffix[16];
            std::snprintf(suffix, sizeof(suffix), "_%03d.csv", i);
            const fs::path path = fs::path(args.out_dir) / (m.name + suffix);
            write_trial(t, path);
            std::cout << path.string() << "\n";
        }
    }
    return 0;
}

struct BandArgs {
    std::string low = "100:400";
    std::string high = "400:800";
    double filter_hz = 50.0;

    BandConfig to_config() const {
        BandConfig bands;
        bands.low = parse_band(low, "--band-low");
        bands.high = parse_band(high, "--band-high");
        bands.filter_width_hz = filter_hz;
        validate(bands);
        return bands;
    }
};

int run_analyze(const BandArgs& band_args, const std::string& out_path,
                const std::vector<std::string>& inputs) {
    const BandConfig bands = band_args.to_config();
    std::vector<TrialAnalysis> analyses;
    analyses.reserve(inputs.size());
    for (const auto& input : inputs)
        analyses.push_back(analyze_trial(ingest_trial(input), bands, input));
    detail::atomic_write(out_path, spectra_csv(analyses));
    std::cout << out_path << "\n";
    return 0;
}

FeatureSelection parse_features(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 2)
        throw ConfigError("--features: expected two comma-separated names, got '" +
                          text + "'");
    return {parse_feature(parts[0]), parse_feature(parts[1])};
}

std::vector<LabeledSample> load_samples(const std::vector<std::string>& inputs,
                                        const BandConfig& bands) {
    std::vector<LabeledSample> samples;
    samples.reserve(inputs.size());
    for (const auto& input : inputs) {
        const Trial t = ingest_trial(input);
        samples.push_back({t.material.name, extract_features(t, bands)});
    }
    return samples;
}

int run_train(const BandArgs& band_args, const std::string& features,
              const std::string& model_out, const std::vector<std::string>& inputs) {
    const BandConfig bands = band_args.to_config();
    const Model model = fit(load_samples(inputs, bands), parse_features(features), bands);
    save_model(model, model_out);
    std::cout << "trained " << inputs.size() << " samples -> "
              << model.classes.size() << " classes -> " << model_out << "\n";
    return 0;
}

int run_classify(const std::string& model_path,
                 const std::vector<std::string>& inputs) {
    const Model model = load_model(model_path);
    std::string header = "# columns=input,predicted";
    for (const auto& c : model.classes) header += ",dist:" + c.label;
    std::cout << header << "\n";
    for (const auto& input : inputs) {
        const Trial t = ingest_trial(input);
        const Prediction p = predict(model, extract_features(t, model.bands));
        std::string row = input + "," + p.label;
        for (const auto& [label, dist] : p.distances)
            row += "," + detail::format_double(dist);
        std::cout << row << "\n";
    }
    return 0;
}

int run_map(const std::string& model_path, const std::string& out_path,
            const std::vector<std::string>& inputs) {
    const Model model = load_model(model_path);
    const ClassificationMap map = export_map(model, load_samples(inputs, model.bands));
    detail::atomic_write(out_path, map_csv(model, map));
    const std::string svg_path = out_path + ".svg";
    detail::atomic_write(svg_path, map_svg(model, map));
    std::cout << out_path << "\n" << svg_path << "\n";
    return 0;
}

std::optional<std::uint64_t> seed_from_environment() {
    const char* value = std::getenv("WAVETOUCH_SEED");
    if (value == nullptr) return std::nullopt;
    return detail::parse_uint64(value, "WAVETOUCH_SEED");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Active vibro-tactile sensing: chirp trials, differential-FFT "
                 "features, nearest-centroid material classification"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand(
        "synth", "Generate a synthetic trial dataset as CSV files");
    synth->add_option("--materials", synth_args.materials,
                      "'builtin', 'builtin-infill', or comma-separated names");
    synth->add_option("--trials", synth_args.trials, "Trials per material");
    auto* snr_opt =
        synth->add_option("--snr-db", synth_args.snr_db, "Additive noise SNR in dB");
    synth->add_flag("--noiseless", synth_args.noiseless, "Disable noise")
        ->excludes(snr_opt);
    synth->add_option("--seed", synth_args.seed,
                      "RNG seed (WAVETOUCH_SEED overrides)");
    synth->add_option("--out", synth_args.out_dir, "Output directory")->required();
    synth->add_option("--f-start", synth_args.f_start, "Sweep start (Hz)");
    synth->add_option("--f-end", synth_args.f_end, "Sweep end (Hz)");
    synth->add_option("--duration", synth_args.duration, "Sweep duration (s)");
    synth->add_option("--rate", synth_args.rate, "Sample rate (Hz)");
    synth->add_option("--amplitude", synth_args.amplitude, "Chirp amplitude");
    synth->add_option("--grip-force", synth_args.grip_force,
                      "Recorded grip force metadata (N)");

    BandArgs analyze_bands, train_bands;
    std::string analyze_out;
    std::vector<std::string> analyze_inputs;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "Export per-trial spectra and smoothed differentials");
    analyze->add_option("--band-low", analyze_bands.low, "Low band LO:HI (Hz)");
    analyze->add_option("--band-high", analyze_bands.high, "High band LO:HI (Hz)");
    analyze->add_option("--filter-hz", analyze_bands.filter_hz, "Boxcar width (Hz)");
    analyze->add_option("--out", analyze_out, "Output CSV path")->required();
    analyze->add_option("inputs", analyze_inputs, "Trial files")->required();

    std::string train_features = "peak_freq,slope";
    std::string train_model_out;
    std::vector<std::string> train_inputs;
    CLI::App* train =
        app.add_subcommand("train", "Fit a nearest-centroid model from trial files");
    train->add_option("--features", train_features,
                      "Feature pair from {peak_freq, peak_mag, slope}");
    train->add_option("--band-low", train_bands.low, "Low band LO:HI (Hz)");
    train->add_option("--band-high", train_bands.high, "High band LO:HI (Hz)");
    train->add_option("--filter-hz", train_bands.filter_hz, "Boxcar width (Hz)");
    train->add_option("--model-out", train_model_out, "Model file path")->required();
    train->add_option("inputs", train_inputs, "Trial files")->required();

    std::string classify_model;
    std::vector<std::string> classify_inputs;
    CLI::App* classify =
        app.add_subcommand("classify", "Predict labels for trial files");
    classify->add_option("--model", classify_model, "Model file")->required();
    classify->add_option("inputs", classify_inputs, "Trial files")->required();

    std::string map_model, map_out;
    std::vector<std::string> map_inputs;
    CLI::App* map_cmd = app.add_subcommand(
        "map", "Export the classification map as CSV plus an SVG scatter plot");
    map_cmd->add_option("--model", map_model, "Model file")->required();
    map_cmd->add_option("--out", map_out, "Output CSV path (SVG adds .svg)")
        ->required();
    map_cmd->add_option("inputs", map_inputs, "Trial files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version keep 0; flag errors are config errors
    }

    try {
        if (const auto env_seed = seed_from_environment()) synth_args.seed = *env_seed;
        if (synth->parsed()) return run_synth(synth_args);
        if (analyze->parsed()) return run_analyze(analyze_bands, analyze_out, analyze_inputs);
        if (train->parsed())
            return run_train(train_bands, train_features, train_model_out, train_inputs);
        if (classify->parsed()) return run_classify(classify_model, classify_inputs);
        if (map_cmd->parsed()) return run_map(map_model, map_out, map_inputs);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
