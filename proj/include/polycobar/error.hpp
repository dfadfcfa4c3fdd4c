#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polycobar {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input that does not describe a valid object (bad JSON, repeated ids, ...).
class MalformedInput : public Error {
public:
    using Error::Error;
};

/// Syntax error in a bracket expression. `offset` is the byte position.
class ParseError : public MalformedInput {
public:
    ParseError(const std::string& what, std::size_t offset)
        : MalformedInput(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Well-formed input outside the mathematical domain (n_i < 2, |I| < 2, ...).
class Unsupported : public Error {
public:
    using Error::Error;
};

/// A construction whose defining condition fails, e.g. a Whitehead product
/// requested on a complex that does not contain the boundary complex.
class NotDefined : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed. Indicates a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace polycobar
