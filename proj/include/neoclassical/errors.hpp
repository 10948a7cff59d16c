#pragma once

#include <stdexcept>
#include <string>

namespace neo {

// Bad run configuration / unknown names / out-of-domain scalar arguments.
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Unreadable or malformed input data.
struct ingest_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerically degenerate inputs (all-zero densities, zero-variance samples, ...).
struct degenerate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace neo
