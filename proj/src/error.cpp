#include "qgamble/error.hpp"

namespace qgamble {

std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::BadShape: return "BadShape";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::NotRank1Projector: return "NotRank1Projector";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotProjector: return "NotProjector";
    case ErrorCode::BadFrame: return "BadFrame";
    case ErrorCode::BadFrame3: return "BadFrame3";
    case ErrorCode::NotDensity: return "NotDensity";
    case ErrorCode::NotDefined: return "NotDefined";
    case ErrorCode::BadValue: return "BadValue";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotInformationallyComplete: return "NotInformationallyComplete";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::BadDistribution: return "BadDistribution";
    case ErrorCode::InvalidMeasure: return "InvalidMeasure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InternalError: return "InternalError";
    }
    return "Unknown";
}

} // namespace qgamble
