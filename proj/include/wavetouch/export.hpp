#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "wavetouch/classify.hpp"
#include "wavetouch/features.hpp"
#include "wavetouch/io_util.hpp"
#include "wavetouch/simulate.hpp"

namespace wavetouch {

/// Per-trial spectra bundle behind the `analyze` command.
struct TrialAnalysis {
    std::string source;  // input path or synthetic id
    Spectrum emitted;    // raw one-sided magnitudes
    Spectrum received;
    DifferentialSpectrum diff;  // smoothed received minus smoothed emitted
};

inline TrialAnalysis analyze_trial(const Trial& t, const BandConfig& bands,
                                   std::string source) {
    validate(bands);
    TrialAnalysis a;
    a.source = std::move(source);
    a.emitted = dft_magnitude(t.emitted);
    a.received = dft_magnitude(t.received);
    a.diff = differential_spectrum(a.emitted, a.received, bands.filter_width_hz);
    return a;
}

/// CSV with one block per trial, blocks separated by `# trial=` comments.
/// Columns: freq_hz, raw emitted/received magnitudes, smoothed differential.
inline std::string spectra_csv(const std::vector<TrialAnalysis>& analyses) {
    std::string out = "# columns=freq_hz,emitted_mag,received_mag,differential\n";
    using detail::format_double;
    for (const auto& a : analyses) {
        out += "# trial=" + a.source + "\n";
        for (std::size_t k = 0; k < a.emitted.size(); ++k) {
            out += format_double(a.emitted.frequency_at(k));
            out += ',';
            out += format_double(a.emitted.magnitudes[k]);
            out += ',';
            out += format_double(a.received.magnitudes[k]);
            out += ',';
            out += format_double(a.diff.values[k]);
            out += '\n';
        }
    }
    return out;
}

/// Classification-map table: point and centroid rows share one schema.
inline std::string map_csv(const Model& m, const ClassificationMap& map) {
    std::string out = "# columns=kind,label,x_raw,y_raw,x_norm,y_norm\n";
    out += std::string("# features=") + feature_name(m.selection.x) + "," +
           feature_name(m.selection.y) + "\n";
    using detail::format_double;
    for (const auto& p : map.points) {
        out += "point," + p.label + ',' + format_double(p.raw[0]) + ',' +
               format_double(p.raw[1]) + ',' + format_double(p.normalized[0]) +
               ',' + format_double(p.normalized[1]) + '\n';
    }
    for (const auto& c : map.centroids) {
        const double raw_x = m.feature_mean[0] + m.feature_std[0] * c.position[0];
        const double raw_y = m.feature_mean[1] + m.feature_std[1] * c.position[1];
        out += "centroid," + c.label + ',' + format_double(raw_x) + ',' +
               format_double(raw_y) + ',' + format_double(c.position[0]) + ',' +
               format_double(c.position[1]) + '\n';
    }
    return out;
}

namespace detail {

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline const char* class_color(std::size_t index) {
    static const char* palette[] = {
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
        "#17becf", "#e377c2", "#bcbd22", "#7f7f7f",
    };
    return palette[index % (sizeof(palette) / sizeof(palette[0]))];
}

}  // namespace detail

/// Static SVG scatter of the normalized feature plane: one color per class,
/// centroids drawn as outlined diamonds, legend down the right edge.
inline std::string map_svg(const Model& m, const ClassificationMap& map) {
    constexpr double width = 760.0, height = 560.0;
    constexpr double left = 70.0, right = 170.0, top = 40.0, bottom = 60.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
    const auto grow = [&](const std::array<double, 2>& p) {
        min_x = std::min(min_x, p[0]);
        max_x = std::max(max_x, p[0]);
        min_y = std::min(min_y, p[1]);
        max_y = std::max(max_y, p[1]);
    };
    for (const auto& p : map.points) grow(p.normalized);
    for (const auto& c : map.centroids) grow(c.position);
    if (min_x > max_x) {
        min_x = min_y = -1.0;
        max_x = max_y = 1.0;
    }
    const double pad_x = 0.08 * std::max(max_x - min_x, 1e-9);
    const double pad_y = 0.08 * std::max(max_y - min_y, 1e-9);
    min_x -= pad_x;
    max_x += pad_x;
    min_y -= pad_y;
    max_y += pad_y;

    const auto sx = [&](double v) {
        return left + (v - min_x) / (max_x - min_x) * plot_w;
    };
    const auto sy = [&](double v) {
        return top + (max_y - v) / (max_y - min_y) * plot_h;
    };

    std::map<std::string, std::size_t> class_index;
    for (std::size_t i = 0; i < map.centroids.size(); ++i)
        class_index[map.centroids[i].label] = i;

    using detail::svg_num;
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + svg_num(width) +
           "\" height=\"" + svg_num(height) + "\" viewBox=\"0 0 " + svg_num(width) +
           " " + svg_num(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<rect x=\"" + svg_num(left) + "\" y=\"" + svg_num(top) + "\" width=\"" +
           svg_num(plot_w) + "\" height=\"" + svg_num(plot_h) +
           "\" fill=\"none\" stroke=\"#444\"/>\n";

    // Axis ticks: five per axis is enough for a survey plot.
    for (int i = 0; i <= 4; ++i) {
        const double fx = min_x + (max_x - min_x) * i / 4.0;
        const double fy = min_y + (max_y - min_y) * i / 4.0;
        const double px = sx(fx);
        const double py = sy(fy);
        svg += "<line x1=\"" + svg_num(px) + "\" y1=\"" + svg_num(top + plot_h) +
               "\" x2=\"" + svg_num(px) + "\" y2=\"" + svg_num(top + plot_h + 5) +
               "\" stroke=\"#444\"/>\n";
        svg += "<text x=\"" + svg_num(px) + "\" y=\"" + svg_num(top + plot_h + 20) +
               "\" font-size=\"11\" text-anchor=\"middle\">" + svg_num(fx) +
               "</text>\n";
        svg += "<line x1=\"" + svg_num(left - 5) + "\" y1=\"" + svg_num(py) +
               "\" x2=\"" + svg_num(left) + "\" y2=\"" + svg_num(py) +
               "\" stroke=\"#444\"/>\n";
        svg += "<text x=\"" + svg_num(left - 8) + "\" y=\"" + svg_num(py + 4) +
               "\" font-size=\"11\" text-anchor=\"end\">" + svg_num(fy) + "</text>\n";
    }
    svg += std::string("<text x=\"") + svg_num(left + plot_w / 2) + "\" y=\"" +
           svg_num(height - 15) + "\" font-size=\"13\" text-anchor=\"middle\">" +
           feature_name(m.selection.x) + " (z-score)</text>\n";
    svg += std::string("<text x=\"18\" y=\"") + svg_num(top + plot_h / 2) +
           "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
           svg_num(top + plot_h / 2) + ")\">" + feature_name(m.selection.y) +
           " (z-score)</text>\n";

    for (const auto& p : map.points) {
        const char* color = detail::class_color(class_index[p.label]);
        svg += "<circle cx=\"" + svg_num(sx(p.normalized[0])) + "\" cy=\"" +
               svg_num(sy(p.normalized[1])) + "\" r=\"3\" fill=\"" + color +
               "\" fill-opacity=\"0.55\"/>\n";
    }
    for (const auto& c : map.centroids) {
        const double px = sx(c.position[0]);
        const double py = sy(c.position[1]);
        const char* color = detail::class_color(class_index[c.label]);
        svg += "<path d=\"M " + svg_num(px) + " " + svg_num(py - 7) + " L " +
               svg_num(px + 7) + " " + svg_num(py) + " L " + svg_num(px) + " " +
               svg_num(py + 7) + " L " + svg_num(px - 7) + " " + svg_num(py) +
               " Z\" fill=\"" + color + "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    }

    double legend_y = top + 10.0;
    for (const auto& c : map.centroids) {
        const char* color = detail::class_color(class_index[c.label]);
        svg += "<circle cx=\"" + svg_num(width - right + 18) + "\" cy=\"" +
               svg_num(legend_y) + "\" r=\"5\" fill=\"" + color + "\"/>\n";
        svg += "<text x=\"" + svg_num(width - right + 30) + "\" y=\"" +
               svg_num(legend_y + 4) + "\" font-size=\"12\">" + c.label + "</text>\n";
        legend_y += 20.0;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace wavetouch
