#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace numdim {

enum class ErrorKind {
    division_by_zero,
    non_integral_class,
    integrality_violation,
    not_big,
    invalid_ample,
    non_invertible,
    iteration_cap,
    nefification_failure,
    insufficient_data,
    domain_error,
    parse_error,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::division_by_zero: return "DivisionByZero";
    case ErrorKind::non_integral_class: return "NonIntegralClass";
    case ErrorKind::integrality_violation: return "IntegralityViolation";
    case ErrorKind::not_big: return "NotBig";
    case ErrorKind::invalid_ample: return "InvalidAmple";
    case ErrorKind::non_invertible: return "NonInvertible";
    case ErrorKind::iteration_cap: return "IterationCap";
    case ErrorKind::nefification_failure: return "NefificationFailure";
    case ErrorKind::insufficient_data: return "InsufficientData";
    case ErrorKind::domain_error: return "DomainError";
    case ErrorKind::parse_error: return "ParseError";
    }
    return "Unknown";
}

// Every failure raised by the library. Internal kinds mean a consistency
// check failed on input that passed validation.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    bool is_internal() const noexcept {
        return kind_ == ErrorKind::integrality_violation ||
               kind_ == ErrorKind::nefification_failure;
    }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& what)
        : Error(ErrorKind::parse_error, "at position " + std::to_string(position) + ": " + what),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace numdim
