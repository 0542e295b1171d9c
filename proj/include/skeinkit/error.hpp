#pragma once

#include <stdexcept>
#include <string>

namespace skeinkit {

// Machine-readable failure codes surfaced through Error::code().
enum class ErrorCode {
    MALFORMED_PD,
    BAD_ARC_MULTIPLICITY,
    NONPLANAR_SUSPECT,
    STATE_LENGTH_MISMATCH,
    ARC_NOT_FOUND,
    STRAND_MISMATCH,
    TOO_MANY_CROSSINGS,
    SLICING_FAILED,
    WIDTH_EXCEEDED,
    INADMISSIBLE_TRIPLE,
    INEXACT_DIVISION,
    NOT_A_TWIST_REGION,
    ZERO_TWIST,
    NOT_ADEQUATE,
    FIT_INCONSISTENT,
    INCONSISTENT_INPUT,
    HYPOTHESES_VIOLATED,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::MALFORMED_PD: return "MALFORMED_PD";
        case ErrorCode::BAD_ARC_MULTIPLICITY: return "BAD_ARC_MULTIPLICITY";
        case ErrorCode::NONPLANAR_SUSPECT: return "NONPLANAR_SUSPECT";
        case ErrorCode::STATE_LENGTH_MISMATCH: return "STATE_LENGTH_MISMATCH";
        case ErrorCode::ARC_NOT_FOUND: return "ARC_NOT_FOUND";
        case ErrorCode::STRAND_MISMATCH: return "STRAND_MISMATCH";
        case ErrorCode::TOO_MANY_CROSSINGS: return "TOO_MANY_CROSSINGS";
        case ErrorCode::SLICING_FAILED: return "SLICING_FAILED";
        case ErrorCode::WIDTH_EXCEEDED: return "WIDTH_EXCEEDED";
        case ErrorCode::INADMISSIBLE_TRIPLE: return "INADMISSIBLE_TRIPLE";
        case ErrorCode::INEXACT_DIVISION: return "INEXACT_DIVISION";
        case ErrorCode::NOT_A_TWIST_REGION: return "NOT_A_TWIST_REGION";
        case ErrorCode::ZERO_TWIST: return "ZERO_TWIST";
        case ErrorCode::NOT_ADEQUATE: return "NOT_ADEQUATE";
        case ErrorCode::FIT_INCONSISTENT: return "FIT_INCONSISTENT";
        case ErrorCode::INCONSISTENT_INPUT: return "INCONSISTENT_INPUT";
        case ErrorCode::HYPOTHESES_VIOLATED: return "HYPOTHESES_VIOLATED";
    }
    return "UNKNOWN";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace skeinkit
