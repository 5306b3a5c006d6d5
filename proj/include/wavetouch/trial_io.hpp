#pragma once

// Trial files are plain CSV with a '#'-prefixed key=value header block:
//
//   # sample_rate_hz=4096
//   # material=Silicone12
//   # youngs_modulus_mpa=0.40000000000000002
//   # infill_fraction=1
//   # trial_index=0
//   # grip_force_n=1
//   # seed=42
//   # columns=time_s,accel_emit,accel_recv
//   0,-0.0117,0.0032
//   ...
//
// Values are written with 17 significant digits, so write -> ingest is
// lossless.

#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wavetouch/errors.hpp"
#include "wavetouch/io_util.hpp"
#include "wavetouch/simulate.hpp"

namespace wavetouch {

inline void write_trial(const Trial& t, const std::filesystem::path& path) {
    if (t.emitted.samples.size() != t.received.samples.size() ||
        t.emitted.sample_rate_hz != t.received.sample_rate_hz)
        throw InputError("write_trial: emitted/received channels disagree");
    validate(t.emitted);
    validate(t.received);
    validate(t.material);

    std::string out;
    out.reserve(t.emitted.samples.size() * 48 + 256);
    const auto header = [&out](std::string_view key, const std::string& value) {
        out += "# ";
        out += key;
        out += '=';
        out += value;
        out += '\n';
    };
    using detail::format_double;
    header("sample_rate_hz", format_double(t.emitted.sample_rate_hz));
    header("material", t.material.name);
    header("youngs_modulus_mpa", format_double(t.material.youngs_modulus_mpa));
    header("infill_fraction", format_double(t.material.infill_fraction));
    header("trial_index", std::to_string(t.trial_index));
    header("grip_force_n", format_double(t.grip_force_n));
    header("seed", std::to_string(t.seed));
    header("columns", "time_s,accel_emit,accel_recv");

    for (std::size_t i = 0; i < t.emitted.samples.size(); ++i) {
        const double time_s =
            static_cast<double>(i) / t.emitted.sample_rate_hz;
        out += format_double(time_s);
        out += ',';
        out += format_double(t.emitted.samples[i]);
        out += ',';
        out += format_double(t.received.samples[i]);
        out += '\n';
    }
    detail::atomic_write(path, out);
}

inline Trial ingest_trial(const std::filesystem::path& path) {
    const std::string content = detail::read_file(path);

    std::map<std::string, std::string, std::less<>> header;
    std::vector<std::array<double, 3>> rows;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < content.size()) {
        ++line_no;
        std::size_t eol = content.find('\n', pos);
        if (eol == std::string::npos) eol = content.size();
        std::string_view line(content.data() + pos, eol - pos);
        pos = eol + 1;
        const std::string where = path.string() + ":" + std::to_string(line_no);

        if (line.empty()) continue;
        if (line.front() == '#') {
            std::string_view body = line.substr(1);
            while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
            const std::size_t eq = body.find('=');
            if (eq == std::string_view::npos)
                throw InputError(where + ": malformed header line (expected key=value)");
            header.emplace(std::string(body.substr(0, eq)),
                           std::string(body.substr(eq + 1)));
            continue;
        }

        std::array<double, 3> row{};
        std::size_t field = 0;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i != line.size() && line[i] != ',') continue;
            if (field >= 3)
                throw InputError(where + ": expected 3 columns, found more");
            row[field] = detail::parse_double(line.substr(start, i - start),
                                              where + " column " + std::to_string(field + 1));
            ++field;
            start = i + 1;
        }
        if (field != 3)
            throw InputError(where + ": expected 3 columns, found " +
                             std::to_string(field));
        for (double v : row)
            if (!std::isfinite(v)) throw InputError(where + ": non-finite value");
        rows.push_back(row);
    }

    const auto require = [&](const char* key) -> const std::string& {
        const auto it = header.find(key);
        if (it == header.end())
            throw InputError(path.string() + ": missing header key '" +
                             std::string(key) + "'");
        return it->second;
    };

    Trial t;
    const double rate = detail::parse_double(require("sample_rate_hz"),
                                             path.string() + " sample_rate_hz");
    if (!(rate > 0.0))
        throw InputError(path.string() + ": sample_rate_hz must be positive");
    t.material.name = require("material");
    t.material.youngs_modulus_mpa = detail::parse_double(
        require("youngs_modulus_mpa"), path.string() + " youngs_modulus_mpa");
    t.material.infill_fraction = detail::parse_double(
        require("infill_fraction"), path.string() + " infill_fraction");
    t.trial_index = static_cast<int>(
        detail::parse_long(require("trial_index"), path.string() + " trial_index"));
    t.grip_force_n =
        detail::parse_double(require("grip_force_n"), path.string() + " grip_force_n");
    t.seed = detail::parse_uint64(require("seed"), path.string() + " seed");
    validate(t.material);

    if (rows.empty()) throw InputError(path.string() + ": no sample rows");

    const double step = 1.0 / rate;
    t.emitted.sample_rate_hz = rate;
    t.received.sample_rate_hz = rate;
    t.emitted.samples.reserve(rows.size());
    t.received.samples.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double expected = static_cast<double>(i) * step;
        if (std::abs(rows[i][0] - expected) > 1e-9 * std::max(1.0, expected))
            throw InputError(path.string() + ":" + std::to_string(i + 1 + header.size()) +
                             ": non-uniform timestamp (expected " +
                             detail::format_double(expected) + ", got " +
                             detail::format_double(rows[i][0]) + ")");
        if (i > 0 && !(rows[i][0] > rows[i - 1][0]))
            throw InputError(path.string() + ": timestamps not strictly increasing");
        t.emitted.samples.push_back(rows[i][1]);
        t.received.samples.push_back(rows[i][2]);
    }
    return t;
}

}  // namespace wavetouch
