#pragma once

// Model files are plain key=value text with an explicit format_version, one
// class=label,cx,cy line per centroid. Numbers carry 17 significant digits
// so save -> load reproduces the model exactly.

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wavetouch/classify.hpp"
#include "wavetouch/errors.hpp"
#include "wavetouch/io_util.hpp"

namespace wavetouch {

inline void save_model(const Model& m, const std::filesystem::path& path) {
    if (m.classes.size() < 2) throw InputError("save_model: fewer than 2 classes");
    std::string out;
    using detail::format_double;
    const auto kv = [&out](std::string_view key, const std::string& value) {
        out += key;
        out += '=';
        out += value;
        out += '\n';
    };
    kv("format_version", "1");
    kv("feature_x", feature_name(m.selection.x));
    kv("feature_y", feature_name(m.selection.y));
    kv("band_low_lo_hz", format_double(m.bands.low.lo_hz));
    kv("band_low_hi_hz", format_double(m.bands.low.hi_hz));
    kv("band_high_lo_hz", format_double(m.bands.high.lo_hz));
    kv("band_high_hi_hz", format_double(m.bands.high.hi_hz));
    kv("filter_width_hz", format_double(m.bands.filter_width_hz));
    kv("mean_x", format_double(m.feature_mean[0]));
    kv("mean_y", format_double(m.feature_mean[1]));
    kv("std_x", format_double(m.feature_std[0]));
    kv("std_y", format_double(m.feature_std[1]));
    for (const auto& c : m.classes) {
        if (c.label.find_first_of(",\n=") != std::string::npos)
            throw InputError("save_model: class label '" + c.label +
                             "' contains a reserved character");
        kv("class", c.label + "," + format_double(c.position[0]) + "," +
                        format_double(c.position[1]));
    }
    detail::atomic_write(path, out);
}

inline Model load_model(const std::filesystem::path& path) {
    const std::string content = detail::read_file(path);
    const std::string where = path.string();

    Model m;
    m.classes.clear();
    bool saw_version = false;
    std::set<std::string> required = {
        "feature_x",      "feature_y", "band_low_lo_hz", "band_low_hi_hz",
        "band_high_lo_hz", "band_high_hi_hz", "filter_width_hz",
        "mean_x",         "mean_y",    "std_x",          "std_y"};

    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < content.size()) {
        ++line_no;
        std::size_t eol = content.find('\n', pos);
        if (eol == std::string::npos) eol = content.size();
        std::string_view line(content.data() + pos, eol - pos);
        pos = eol + 1;
        if (line.empty() || line.front() == '#') continue;
        const std::string ctx = where + ":" + std::to_string(line_no);

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw InputError(ctx + ": malformed line (expected key=value)");
        const std::string_view key = line.substr(0, eq);
        const std::string_view value = line.substr(eq + 1);

        if (key == "format_version") {
            if (value != "1")
                throw InputError(ctx + ": unsupported format_version '" +
                                 std::string(value) + "'");
            saw_version = true;
        } else if (key == "feature_x") {
            m.selection.x = parse_feature(value);
        } else if (key == "feature_y") {
            m.selection.y = parse_feature(value);
        } else if (key == "band_low_lo_hz") {
            m.bands.low.lo_hz = detail::parse_double(value, ctx);
        } else if (key == "band_low_hi_hz") {
            m.bands.low.hi_hz = detail::parse_double(value, ctx);
        } else if (key == "band_high_lo_hz") {
            m.bands.high.lo_hz = detail::parse_double(value, ctx);
        } else if (key == "band_high_hi_hz") {
            m.bands.high.hi_hz = detail::parse_double(value, ctx);
        } else if (key == "filter_width_hz") {
            m.bands.filter_width_hz = detail::parse_double(value, ctx);
        } else if (key == "mean_x") {
            m.feature_mean[0] = detail::parse_double(value, ctx);
        } else if (key == "mean_y") {
            m.feature_mean[1] = detail::parse_double(value, ctx);
        } else if (key == "std_x") {
            m.feature_std[0] = detail::parse_double(value, ctx);
        } else if (key == "std_y") {
            m.feature_std[1] = detail::parse_double(value, ctx);
        } else if (key == "class") {
            const std::size_t c1 = value.find(',');
            const std::size_t c2 = c1 == std::string_view::npos
                                       ? std::string_view::npos
                                       : value.find(',', c1 + 1);
            if (c2 == std::string_view::npos)
                throw InputError(ctx + ": malformed class line (expected label,cx,cy)");
            Model::Centroid c;
            c.label = std::string(value.substr(0, c1));
            c.position[0] = detail::parse_double(value.substr(c1 + 1, c2 - c1 - 1), ctx);
            c.position[1] = detail::parse_double(value.substr(c2 + 1), ctx);
            m.classes.push_back(std::move(c));
        } else {
            throw InputError(ctx + ": unknown key '" + std::string(key) + "'");
        }
        required.erase(std::string(key));
    }

    if (!saw_version) throw InputError(where + ": missing format_version");
    if (!required.empty())
        throw InputError(where + ": missing key '" + *required.begin() + "'");
    if (m.classes.size() < 2)
        throw InputError(where + ": model needs at least 2 classes");
    for (std::size_t i = 1; i < m.classes.size(); ++i)
        if (!(m.classes[i - 1].label < m.classes[i].label))
            throw InputError(where + ": class labels not sorted/unique");
    if (!(m.feature_std[0] > 0.0) || !(m.feature_std[1] > 0.0))
        throw InputError(where + ": feature standard deviations must be positive");
    validate(m.bands);
    return m;
}

}  // namespace wavetouch
