#ifndef HOMOTOR_ERROR_HPP
#define HOMOTOR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace homotor {

enum class ErrorCode {
    LengthMismatch,
    EmptyInput,
    UnitIdeal,
    CompositionNonzero,
    BoxTooSmall,
    MixedKinds,
    EmptySelection,
    FiltrationViolation,
    InvalidKind,
    ZeroModule,
    OverlappingPartitions,
    ParseError,
    ValidationError,
    UnknownCommand,
    ParamOutOfRange,
    NotPrime,
    InvalidArgument,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::UnitIdeal: return "UnitIdeal";
        case ErrorCode::CompositionNonzero: return "CompositionNonzero";
        case ErrorCode::BoxTooSmall: return "BoxTooSmall";
        case ErrorCode::MixedKinds: return "MixedKinds";
        case ErrorCode::EmptySelection: return "EmptySelection";
        case ErrorCode::FiltrationViolation: return "FiltrationViolation";
        case ErrorCode::InvalidKind: return "InvalidKind";
        case ErrorCode::ZeroModule: return "ZeroModule";
        case ErrorCode::OverlappingPartitions: return "OverlappingPartitions";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::UnknownCommand: return "UnknownCommand";
        case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace homotor

#endif
