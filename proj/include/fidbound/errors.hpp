#pragma once

#include <stdexcept>
#include <string>

namespace fidbound {

enum class ErrorKind {
    InvalidBipartition,
    DimensionMismatch,
    NotNormalized,
    NotHermitian,
    TraceMismatch,
    NotPositive,
    OutOfDomain,
    Parse,
};

inline const char *to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidBipartition: return "invalid-bipartition";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::NotNormalized: return "not-normalized";
    case ErrorKind::NotHermitian: return "hermiticity-error";
    case ErrorKind::TraceMismatch: return "trace-error";
    case ErrorKind::NotPositive: return "psd-error";
    case ErrorKind::OutOfDomain: return "domain-error";
    case ErrorKind::Parse: return "parse-error";
    }
    return "unknown";
}

// Bad input: maps to exit code 1 in the CLI.
class ValidationError : public std::invalid_argument {
  public:
    ValidationError(ErrorKind kind, const std::string &what)
        : std::invalid_argument(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

// Internal inconsistency of a numerical routine: exit code 2.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace fidbound
