#pragma once

#include <stdexcept>
#include <string>

namespace seird {

/// Malformed or invalid run configuration. `key()` names the offending field when known.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

} // namespace seird
