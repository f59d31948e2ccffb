#pragma once

#include <stdexcept>
#include <string>

namespace turncp {

// Inputs that violate a documented precondition (too short, wrong length, ...).
class InvalidInputError : public std::invalid_argument {
public:
    explicit InvalidInputError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed specs, parameters outside their domain, bad experiment configs.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Data that is formally valid but carries no usable signal (e.g. a constant
// series, for which every self-normalizer vanishes).
class DegenerateInputError : public std::runtime_error {
public:
    explicit DegenerateInputError(const std::string& what) : std::runtime_error(what) {}
};

// File-format and filesystem failures; messages carry the offending line
// number where one is known.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace turncp
