#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wreathscope {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands built over different coefficient groups (or a coefficient of the
/// wrong rank / out of range for the group).
class GroupMismatch : public Error {
public:
    using Error::Error;
};

/// Text did not match the polynomial, element, group or structure grammar.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at offset " + std::to_string(position) + ")"), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A configured size bound (group order, subgroup enumeration) was exceeded.
class BoundExceeded : public Error {
public:
    using Error::Error;
};

/// A target lies outside the truncation window, or the window state space is
/// larger than the configured limit.
class WindowExceeded : public Error {
public:
    using Error::Error;
};

/// An operation was called on inputs that violate its documented precondition.
class PreconditionViolated : public Error {
public:
    using Error::Error;
};

}  // namespace wreathscope
