#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncalg {

/// Base of every error the library raises on bad input or unmet preconditions.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          message_(what),
          line_(line),
          column_(column) {}
    /// The message without the position prefix.
    const std::string& message() const { return message_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

class AlphabetMismatch : public Error {
public:
    AlphabetMismatch() : Error("mismatched alphabets") {}
};

/// Raised when a relation is not homogeneous, has the wrong degree, or is zero.
class RelationError : public Error {
public:
    using Error::Error;
};

/// Raised when a request exceeds the degree a basis was truncated at.
class TruncationError : public Error {
public:
    using Error::Error;
};

class SizeGuardError : public Error {
public:
    using Error::Error;
};

class SingularError : public Error {
public:
    using Error::Error;
};

class ChainMismatch : public Error {
public:
    using Error::Error;
};

class ModularDisagreement : public Error {
public:
    using Error::Error;
};

}  // namespace ncalg
