#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cpjoint {

enum class ErrorCode {
    NonFiniteValue,
    TooFewObservations,
    RaggedMatrix,
    NonFiniteInput,
    NegativeInput,
    POutOfRange,
    AlphaOutOfRange,
    NTooSmall,
    DegenerateScale,
    EmptyGrid,
    BadParam,
    NotPsd,
    NotSymmetric,
    TauOutOfRange,
    ParseError,
    IoError,
};

/// Stable upper-case name, e.g. "DEGENERATE_SCALE". Used in diagnostics and reports.
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace cpjoint
