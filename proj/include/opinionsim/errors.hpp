#pragma once

#include <stdexcept>
#include <string>

namespace opinionsim {

/// Invalid configuration value (bad range, proportion sum, unknown key, ...).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Graph sampling could not satisfy its constraints.
struct GraphGenerationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or incomplete input data handed to an analysis step.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Analysis produced no usable result (e.g. empty selection).
struct AnalysisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File read/write failure, with the offending path in the message.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace opinionsim
