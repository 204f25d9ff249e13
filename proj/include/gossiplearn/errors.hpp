#pragma once

#include <stdexcept>

namespace gossiplearn {

// Mismatched sizes between values that must agree (vector lengths, matrix
// shapes, batch rows vs labels).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Out-of-range or inconsistent configuration value.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed input file.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// API misuse: unknown node id, empty dataset, invalid argument combination.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace gossiplearn
