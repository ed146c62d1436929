#pragma once

#include <stdexcept>
#include <string>

namespace nemflow {

// Bad user input: config files, CLI arguments, mismatched boundary data.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Solver breakdown: non-convergence, NaN fields, incompatible Poisson data.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed data files (records CSV, snapshots).
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace nemflow
