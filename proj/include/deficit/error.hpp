#ifndef DEFICIT_ERROR_HPP
#define DEFICIT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace deficit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. `row` is the 1-based data row (0 when the error is
/// not tied to a row, e.g. a bad header or a standalone duration string).
class ParseError : public Error {
public:
    ParseError(std::size_t row, std::string field, const std::string& message)
        : Error(row == 0 ? field + ": " + message
                         : "row " + std::to_string(row) + ", " + field + ": " + message),
          row_(row), field_(std::move(field)) {}

    std::size_t row() const noexcept { return row_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::size_t row_;
    std::string field_;
};

/// Well-formed input that violates a domain rule.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Solver parameters outside their admissible ranges.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// The summed per-segment capacities cannot cover the deficit.
class UnsolvableError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

} // namespace deficit

#endif // DEFICIT_ERROR_HPP
