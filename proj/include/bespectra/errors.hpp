#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bespectra {

enum class ErrorCode {
    InvalidArgument,
    BracketEmpty,
    NoConvergence,
    StiffFailure,
    WrongBranch,
    GridTooCoarse,
    DegenerateWeight,
    EvaluationUnstable,
    NormalizationInconsistent,
    OrderExceeded,
    RootNotBracketed,
    SpecInvalid,
    ReflectionMismatch,
    PoleSingular,
    CFLFailure,
    ModulusViolated,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BracketEmpty: return "BracketEmpty";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::StiffFailure: return "StiffFailure";
    case ErrorCode::WrongBranch: return "WrongBranch";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::DegenerateWeight: return "DegenerateWeight";
    case ErrorCode::EvaluationUnstable: return "EvaluationUnstable";
    case ErrorCode::NormalizationInconsistent: return "NormalizationInconsistent";
    case ErrorCode::OrderExceeded: return "OrderExceeded";
    case ErrorCode::RootNotBracketed: return "RootNotBracketed";
    case ErrorCode::SpecInvalid: return "SpecInvalid";
    case ErrorCode::ReflectionMismatch: return "ReflectionMismatch";
    case ErrorCode::PoleSingular: return "PoleSingular";
    case ErrorCode::CFLFailure: return "CFLFailure";
    case ErrorCode::ModulusViolated: return "ModulusViolated";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class SpectralError : public std::runtime_error {
public:
    SpectralError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw SpectralError(code, what);
}

inline void require(bool condition, ErrorCode code, const std::string& what) {
    if (!condition) fail(code, what);
}

} // namespace bespectra
