// error.hpp: error codes and the exception type thrown by qgamble.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qgamble {

enum class ErrorCode {
    BadShape,
    NotHermitian,
    NumericalFailure,
    NotUnit,
    NotRank1Projector,
    WrongDimension,
    DimensionMismatch,
    NotProjector,
    BadFrame,
    BadFrame3,
    NotDensity,
    NotDefined,
    BadValue,
    NegativeWeight,
    BadParameter,
    PreconditionViolated,
    NotInformationallyComplete,
    ResidualTooLarge,
    BadDistribution,
    InvalidMeasure,
    ParseError,
    InternalError,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace qgamble
