#pragma once

#include <stdexcept>
#include <string>

namespace bridgescore {

enum class ErrorKind {
    malformed_identifier,
    undefined_metric,
    non_convergence,
    partition_mismatch,
    undefined_partition,
    missing_metric,
    parse,
    io,
    invalid_argument,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::malformed_identifier: return "malformed identifier";
    case ErrorKind::undefined_metric: return "undefined metric";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::partition_mismatch: return "partition mismatch";
    case ErrorKind::undefined_partition: return "undefined partition";
    case ErrorKind::missing_metric: return "missing metric";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::io: return "i/o error";
    case ErrorKind::invalid_argument: return "invalid argument";
    }
    return "error";
}

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Power iteration did not settle; carries the last L-infinity step.
class NonConvergenceError : public Error {
public:
    NonConvergenceError(double residual, int iterations)
        : Error(ErrorKind::non_convergence,
                "eigenvector power iteration did not converge after " + std::to_string(iterations) +
                    " iterations (residual " + std::to_string(residual) + ")"),
          residual_(residual), iterations_(iterations) {}

    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_;
    int iterations_;
};

} // namespace bridgescore
