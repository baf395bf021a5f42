#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spectratope {

enum class ErrorCode {
    Parse,
    Singular,
    ShapeMismatch,
    LengthMismatch,
    ResourceLimit,
    NotHadamard,
    UnsupportedOrder,
    IndexOutOfRange,
    Degenerate,
    Unbounded,
    EmptySpectrum,
    NotNormalizable,
    ConditionsFail,
    InternalDispatchFailure,
    OrderMismatch,
    NotSuleimanova,
    NotSupported,
    OutOfRange,
    IO,
};

constexpr std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::NotHadamard: return "NotHadamard";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::EmptySpectrum: return "EmptySpectrum";
    case ErrorCode::NotNormalizable: return "NotNormalizable";
    case ErrorCode::ConditionsFail: return "ConditionsFail";
    case ErrorCode::InternalDispatchFailure: return "InternalDispatchFailure";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::NotSuleimanova: return "NotSuleimanova";
    case ErrorCode::NotSupported: return "NotSupported";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::IO: return "IO";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace spectratope
