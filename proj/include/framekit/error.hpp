#ifndef FRAMEKIT_ERROR_HPP
#define FRAMEKIT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace framekit {

enum class ErrorCode {
    DimensionMismatch,
    NonFinite,
    NotHermitian,
    NotPsd,
    NoConvergence,
    Singular,
    EmptyFrame,
    NotAFrame,
    SpaceMismatch,
    InvalidMeasure,
    InvalidBounds,
    UnknownAtom,
    NotUnitVector,
    InvalidPovm,
    SequenceDoesNotSpan,
    InvalidRule,
    NotFramed,
    AtomMismatch,
    ParseError,
    CommandError,
    LimitExceeded,
    IoError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::EmptyFrame: return "EmptyFrame";
    case ErrorCode::NotAFrame: return "NotAFrame";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::InvalidMeasure: return "InvalidMeasure";
    case ErrorCode::InvalidBounds: return "InvalidBounds";
    case ErrorCode::UnknownAtom: return "UnknownAtom";
    case ErrorCode::NotUnitVector: return "NotUnitVector";
    case ErrorCode::InvalidPovm: return "InvalidPovm";
    case ErrorCode::SequenceDoesNotSpan: return "SequenceDoesNotSpan";
    case ErrorCode::InvalidRule: return "InvalidRule";
    case ErrorCode::NotFramed: return "NotFramed";
    case ErrorCode::AtomMismatch: return "AtomMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::CommandError: return "CommandError";
    case ErrorCode::LimitExceeded: return "LimitExceeded";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// CLI renders it as "<Name>: <message>".
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace framekit

#endif // FRAMEKIT_ERROR_HPP
