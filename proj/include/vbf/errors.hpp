#pragma once

#include <stdexcept>
#include <string>

namespace vbf {

/// Bad arguments: out-of-range n, malformed exponents, odd n where even is required.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An object could not be built, e.g. a reducible field modulus.
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mathematically undefined request (0 raised to a negative power).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The input is valid but outside what a module handles (non-quadratic exponent for the kernel path).
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Work would exceed the default resource budget; rerun with the named flag.
class ResourceGateError : public std::runtime_error {
public:
    ResourceGateError(const std::string& what, std::string flag)
        : std::runtime_error(what), flag_(std::move(flag)) {}
    const std::string& required_flag() const noexcept { return flag_; }

private:
    std::string flag_;
};

}  // namespace vbf
