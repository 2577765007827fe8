#pragma once

#include <stdexcept>
#include <string>

namespace gigmix {

// Buckets map onto CLI exit codes: usage 2, validation 3, io 4, numerical 5.
enum class ErrorCategory { Usage = 2, Validation = 3, Io = 4, Numerical = 5 };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& message)
        : std::runtime_error(message), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

// Invalid argument values (x <= 0, non-finite inputs, bad weights, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& m) : Error(ErrorCategory::Validation, m) {}
};

// Arguments outside the supported evaluation envelope.
struct RangeError : Error {
    explicit RangeError(const std::string& m) : Error(ErrorCategory::Validation, m) {}
};

// Malformed files, inconsistent configuration, infeasible targets.
struct ValidationError : Error {
    explicit ValidationError(const std::string& m) : Error(ErrorCategory::Validation, m) {}
};

struct IoError : Error {
    explicit IoError(const std::string& m) : Error(ErrorCategory::Io, m) {}
};

// The requested density integral diverges.
struct NonNormalizableError : Error {
    explicit NonNormalizableError(const std::string& m) : Error(ErrorCategory::Numerical, m) {}
};

// Iterative solver diverged or failed to converge.
struct NoSolutionError : Error {
    explicit NoSolutionError(const std::string& m) : Error(ErrorCategory::Numerical, m) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& m) : Error(ErrorCategory::Numerical, m) {}
};

struct UsageError : Error {
    explicit UsageError(const std::string& m) : Error(ErrorCategory::Usage, m) {}
};

}  // namespace gigmix
