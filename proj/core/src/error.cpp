#include "cpjoint/error.hpp"

namespace cpjoint {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonFiniteValue: return "NON_FINITE_VALUE";
        case ErrorCode::TooFewObservations: return "TOO_FEW_OBSERVATIONS";
        case ErrorCode::RaggedMatrix: return "RAGGED_MATRIX";
        case ErrorCode::NonFiniteInput: return "NON_FINITE_INPUT";
        case ErrorCode::NegativeInput: return "NEGATIVE_INPUT";
        case ErrorCode::POutOfRange: return "P_OUT_OF_RANGE";
        case ErrorCode::AlphaOutOfRange: return "ALPHA_OUT_OF_RANGE";
        case ErrorCode::NTooSmall: return "N_TOO_SMALL";
        case ErrorCode::DegenerateScale: return "DEGENERATE_SCALE";
        case ErrorCode::EmptyGrid: return "EMPTY_GRID";
        case ErrorCode::BadParam: return "BAD_PARAM";
        case ErrorCode::NotPsd: return "NOT_PSD";
        case ErrorCode::NotSymmetric: return "NOT_SYMMETRIC";
        case ErrorCode::TauOutOfRange: return "TAU_OUT_OF_RANGE";
        case ErrorCode::ParseError: return "PARSE_ERROR";
        case ErrorCode::IoError: return "IO_ERROR";
    }
    return "UNKNOWN";
}

}  // namespace cpjoint
