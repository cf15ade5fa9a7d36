#pragma once

#include <stdexcept>
#include <string>

namespace ihom {

enum class ErrorCode {
    NonClosedFiltration,
    EmptyRegularPart,
    InvalidComplex,
    InvalidGeometry,
    SamplingExhausted,
    InvariantViolation,
    NotMinimal,
    CoverNotOpen,
    NotStratified,
    NoStabilization,
    ParseError,
    ValidationError,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

/// Raised by checked 64-bit arithmetic; callers retry with big integers.
class Overflow : public std::overflow_error {
public:
    Overflow() : std::overflow_error("int64 overflow") {}
};

}  // namespace ihom
