#pragma once

#include <stdexcept>
#include <string>

namespace sulfsim {

/// Raised on malformed config files or invariant violations; carries the
/// offending key so callers can report it precisely.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key.empty() ? what : key + ": " + what),
          key_(std::move(key)) {}

    const std::string& key() const { return key_; }

private:
    std::string key_;
};

/// Fatal integrator failures: singular linear systems, step-size underflow.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem / output failures.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace sulfsim
