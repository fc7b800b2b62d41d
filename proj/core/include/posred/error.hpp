#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace posred {

enum class ErrorKind {
    InvalidArgument,
    NonFinite,
    ZeroMatrix,
    RankDeficient,
    NotNonneg,
    NotSquare,
    Singular,
    TooLarge,
    NotInvariant,
    NotPositive,
    DimensionMismatch,
    NegativeInput,
    UnsupportedTimeDomain,
    UnsupportedCoordinate,
    SupportFailure,
    ClosureMismatch,
    InternalVerification,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers can dispatch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace posred
