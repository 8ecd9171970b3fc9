#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lrc {

enum class ErrorCode {
    NotPrime,
    ReducibleModulus,
    DegreeMismatch,
    ZeroInverse,
    FieldMismatch,
    InvalidParameters,
    LocalityTooSmall,
    CharacteristicNotTwo,
    DesignInvalid,
    RankDeficient,
    BudgetExceeded,
    UnknownStructure,
    LengthMismatch,
    WrongErasureCount,
    MatesUnavailable,
    TooManyErasures,
    InconsistentWord,
    ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::ReducibleModulus: return "ReducibleModulus";
        case ErrorCode::DegreeMismatch: return "DegreeMismatch";
        case ErrorCode::ZeroInverse: return "ZeroInverse";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::InvalidParameters: return "InvalidParameters";
        case ErrorCode::LocalityTooSmall: return "LocalityTooSmall";
        case ErrorCode::CharacteristicNotTwo: return "CharacteristicNotTwo";
        case ErrorCode::DesignInvalid: return "DesignInvalid";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::UnknownStructure: return "UnknownStructure";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::WrongErasureCount: return "WrongErasureCount";
        case ErrorCode::MatesUnavailable: return "MatesUnavailable";
        case ErrorCode::TooManyErasures: return "TooManyErasures";
        case ErrorCode::InconsistentWord: return "InconsistentWord";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace lrc
