#pragma once

#include <stdexcept>
#include <string>

namespace pat {

/// Invalid input, configuration or file contents. CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Solver failure: CFL violation, blow-up, eigensolver breakdown. CLI exit code 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message)
{
    if (!condition) {
        throw ConfigError(message);
    }
}

}  // namespace pat
