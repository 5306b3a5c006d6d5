#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <system_error>

#include "wavetouch/errors.hpp"

namespace wavetouch::detail {

/// Shortest decimal form that round-trips a double (17 significant digits).
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline double parse_double(std::string_view text, const std::string& context) {
    double value = 0.0;
    const auto* begin = text.data();
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw InputError(context + ": expected a number, got '" + std::string(text) + "'");
    return value;
}

inline std::uint64_t parse_uint64(std::string_view text, const std::string& context) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw InputError(context + ": expected an unsigned integer, got '" +
                         std::string(text) + "'");
    return value;
}

inline long parse_long(std::string_view text, const std::string& context) {
    long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw InputError(context + ": expected an integer, got '" + std::string(text) + "'");
    return value;
}

/// Write the whole file through a temp sibling plus rename, so readers never
/// observe a partial file and failed writes leave the target untouched.
inline void atomic_write(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw InputError("failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw InputError("cannot move temporary file onto '" + path.string() +
                         "': " + ec.message());
    }
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    return content;
}

}  // namespace wavetouch::detail
