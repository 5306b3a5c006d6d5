#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wavetouch/errors.hpp"
#include "wavetouch/features.hpp"

namespace wavetouch {

enum class Feature { peak_freq, peak_mag, slope };

inline const char* feature_name(Feature f) {
    switch (f) {
        case Feature::peak_freq: return "peak_freq";
        case Feature::peak_mag: return "peak_mag";
        case Feature::slope: return "slope";
    }
    return "?";
}

inline Feature parse_feature(std::string_view name) {
    if (name == "peak_freq") return Feature::peak_freq;
    if (name == "peak_mag") return Feature::peak_mag;
    if (name == "slope") return Feature::slope;
    throw ConfigError("unknown feature '" + std::string(name) +
                      "' (expected peak_freq, peak_mag, or slope)");
}

inline double select_feature(const FeatureVector& fv, Feature f) {
    switch (f) {
        case Feature::peak_freq: return fv.low_peak_freq_hz;
        case Feature::peak_mag: return fv.low_peak_mag;
        case Feature::slope: return fv.high_trend_slope;
    }
    return 0.0;
}

/// The two feature axes of the classification map.
struct FeatureSelection {
    Feature x = Feature::peak_freq;
    Feature y = Feature::slope;
};

struct LabeledSample {
    std::string label;
    FeatureVector features;
};

/// Nearest-centroid model in z-scored 2D feature space.
struct Model {
    struct Centroid {
        std::string label;
        std::array<double, 2> position;  // normalized coordinates
    };

    std::vector<Centroid> classes;  // sorted by label
    std::array<double, 2> feature_mean{0.0, 0.0};
    std::array<double, 2> feature_std{1.0, 1.0};
    FeatureSelection selection;
    BandConfig bands;

    std::array<double, 2> raw_features(const FeatureVector& fv) const {
        return {select_feature(fv, selection.x), select_feature(fv, selection.y)};
    }

    std::array<double, 2> normalize(const std::array<double, 2>& raw) const {
        return {(raw[0] - feature_mean[0]) / feature_std[0],
                (raw[1] - feature_mean[1]) / feature_std[1]};
    }
};

/// Z-score all samples, then place one centroid per label at the mean of its
/// normalized features. Degenerate inputs (a single class, or a feature with
/// zero variance) are hard errors.
inline Model fit(const std::vector<LabeledSample>& samples,
                 FeatureSelection selection = {}, const BandConfig& bands = {}) {
    if (selection.x == selection.y)
        throw ConfigError(std::string("fit: feature pair must use two distinct features, got ") +
                          feature_name(selection.x) + " twice");
    validate(bands);
    if (samples.empty()) throw InputError("fit: no samples");

    Model m;
    m.selection = selection;
    m.bands = bands;

    for (int axis = 0; axis < 2; ++axis) {
        const Feature f = axis == 0 ? selection.x : selection.y;
        double mean = 0.0;
        for (const auto& s : samples) mean += select_feature(s.features, f);
        mean /= static_cast<double>(samples.size());
        double var = 0.0;
        for (const auto& s : samples) {
            const double d = select_feature(s.features, f) - mean;
            var += d * d;
        }
        var /= static_cast<double>(samples.size());
        if (!(var > 0.0))
            throw InputError(std::string("fit: feature '") + feature_name(f) +
                             "' has zero variance across the training samples");
        m.feature_mean[axis] = mean;
        m.feature_std[axis] = std::sqrt(var);
    }

    std::map<std::string, std::pair<std::array<double, 2>, std::size_t>> sums;
    for (const auto& s : samples) {
        const auto z = m.normalize(m.raw_features(s.features));
        auto& [acc, count] = sums[s.label];
        acc[0] += z[0];
        acc[1] += z[1];
        ++count;
    }
    if (sums.size() < 2)
        throw InputError("fit: need at least 2 distinct classes, got " +
                         std::to_string(sums.size()));

    for (const auto& [label, entry] : sums) {
        const auto& [acc, count] = entry;
        m.classes.push_back(
            {label, {acc[0] / static_cast<double>(count), acc[1] / static_cast<double>(count)}});
    }
    // std::map iteration already yields lexicographic label order.
    return m;
}

struct Prediction {
    std::string label;
    std::vector<std::pair<std::string, double>> distances;  // per class, model order
};

/// Nearest centroid by Euclidean distance in normalized space; ties resolve
/// to the lexicographically first label.
inline Prediction predict(const Model& m, const FeatureVector& fv) {
    const auto raw = m.raw_features(fv);
    if (!std::isfinite(raw[0]) || !std::isfinite(raw[1]))
        throw InputError("predict: non-finite feature value");
    const auto z = m.normalize(raw);

    Prediction p;
    p.distances.reserve(m.classes.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < m.classes.size(); ++i) {
        const auto& c = m.classes[i];
        const double dist = std::hypot(z[0] - c.position[0], z[1] - c.position[1]);
        p.distances.emplace_back(c.label, dist);
        if (dist < p.distances[best].second) best = i;
    }
    p.label = p.distances[best].first;
    return p;
}

struct MapPoint {
    std::string label;
    std::array<double, 2> raw;
    std::array<double, 2> normalized;
};

/// Scatter data behind the classification map figure.
struct ClassificationMap {
    std::vector<MapPoint> points;            // sorted by label, input order within
    std::vector<Model::Centroid> centroids;  // from the model, sorted by label
};

inline ClassificationMap export_map(const Model& m,
                                    const std::vector<LabeledSample>& samples) {
    ClassificationMap out;
    out.centroids = m.classes;
    out.points.reserve(samples.size());
    for (const auto& s : samples) {
        const bool known = std::any_of(
            m.classes.begin(), m.classes.end(),
            [&](const Model::Centroid& c) { return c.label == s.label; });
        if (!known)
            throw InputError("export_map: label '" + s.label +
                             "' has no centroid in the model");
        const auto raw = m.raw_features(s.features);
        out.points.push_back({s.label, raw, m.normalize(raw)});
    }
    std::stable_sort(out.points.begin(), out.points.end(),
                     [](const MapPoint& a, const MapPoint& b) { return a.label < b.label; });
    return out;
}

struct SplitResult {
    std::vector<LabeledSample> train;
    std::vector<LabeledSample> test;
};

/// Stratified split: per label, the first round(fraction * n) samples in
/// input order go to train, the rest to test.
inline SplitResult train_test_split(const std::vector<LabeledSample>& samples,
                                    double train_fraction) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw ConfigError("train_test_split: fraction must be in (0, 1)");
    std::map<std::string, std::size_t> seen, total;
    for (const auto& s : samples) ++total[s.label];
    SplitResult out;
    for (const auto& s : samples) {
        const auto n = static_cast<double>(total[s.label]);
        const auto n_train =
            static_cast<std::size_t>(std::llround(train_fraction * n));
        if (seen[s.label]++ < n_train)
            out.train.push_back(s);
        else
            out.test.push_back(s);
    }
    return out;
}

}  // namespace wavetouch
