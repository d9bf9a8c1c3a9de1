#pragma once

#include <stdexcept>
#include <string>

namespace miae {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Shape or size of an argument does not match what the operation requires.
struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

// Malformed input file (CSV cell, missing column, bad model file, ...).
struct IngestError : Error {
    explicit IngestError(const std::string& msg) : Error(msg) {}
};

// Invalid configuration (architecture widths, hyperparameters, CLI config).
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Non-finite value where a finite one is required (diverged training, bad loss).
struct NumericError : Error {
    explicit NumericError(const std::string& msg) : Error(msg) {}
};

}  // namespace miae
