#pragma once

#include <stdexcept>
#include <string>

namespace dieudet {

// One error type for the whole library; the kind tells callers (and the CLI
// exit-code mapping) what went wrong.
enum class ErrorKind {
    PrimeMismatch,
    ContextMismatch,
    GroupMismatch,
    NotAUnit,
    NotInOrder,
    NotInRealSubfield,
    NotPrincipalUnit,
    UnsupportedGroup,
    SingularAtPrecision,
    NoUnitPivot,
    InfiniteOrder,
    ZeroAtPrecision,
    NonIntegralNrd,
    NegativeExponent,
    InsufficientPrecision,
    NilpotentDeterminant,
    PrecisionTooLow,
    ParseError,
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::PrimeMismatch: return "PrimeMismatch";
        case ErrorKind::ContextMismatch: return "ContextMismatch";
        case ErrorKind::GroupMismatch: return "GroupMismatch";
        case ErrorKind::NotAUnit: return "NotAUnit";
        case ErrorKind::NotInOrder: return "NotInOrder";
        case ErrorKind::NotInRealSubfield: return "NotInRealSubfield";
        case ErrorKind::NotPrincipalUnit: return "NotPrincipalUnit";
        case ErrorKind::UnsupportedGroup: return "UnsupportedGroup";
        case ErrorKind::SingularAtPrecision: return "SingularAtPrecision";
        case ErrorKind::NoUnitPivot: return "NoUnitPivot";
        case ErrorKind::InfiniteOrder: return "InfiniteOrder";
        case ErrorKind::ZeroAtPrecision: return "ZeroAtPrecision";
        case ErrorKind::NonIntegralNrd: return "NonIntegralNrd";
        case ErrorKind::NegativeExponent: return "NegativeExponent";
        case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
        case ErrorKind::NilpotentDeterminant: return "NilpotentDeterminant";
        case ErrorKind::PrecisionTooLow: return "PrecisionTooLow";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace dieudet
