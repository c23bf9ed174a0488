#pragma once

#include <stdexcept>
#include <string>

namespace tvtest {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when an input violates a documented precondition (empty input,
/// out-of-range parameter, malformed configuration).
struct InvalidInputError : Error {
    using Error::Error;
};

/// Raised when a series is too short for the requested regression.
struct InsufficientDataError : Error {
    using Error::Error;
};

/// Raised when a design matrix is rank deficient at working precision.
struct SingularDesignError : Error {
    using Error::Error;
};

/// Raised when the conditional variance recursion produces h_t^2 <= 0.
struct PositivityError : Error {
    PositivityError(long t, double h2)
        : Error("conditional variance not positive at t=" + std::to_string(t) +
                " (h^2=" + std::to_string(h2) + ")"),
          time_index(t) {}
    long time_index;
};

/// Raised when a bootstrap exhausts its redraw budget.
struct BootstrapFailureError : Error {
    using Error::Error;
};

/// Raised when a Monte Carlo replication keeps failing after fresh reseeds.
struct ExperimentError : Error {
    using Error::Error;
};

/// Raised when a table layout requires cells the table does not contain.
struct IncompleteTableError : Error {
    using Error::Error;
};

}  // namespace tvtest
