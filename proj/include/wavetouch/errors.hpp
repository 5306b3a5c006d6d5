#pragma once

#include <stdexcept>
#include <string>

namespace wavetouch {

/// Invalid configuration: bad chirp bounds, Nyquist violation, bad flags.
/// Maps to process exit code 2 in the CLI.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid data: malformed files, mismatched grids, degenerate fits.
/// Maps to process exit code 1 in the CLI.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wavetouch
