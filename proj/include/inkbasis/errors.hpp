#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace inkbasis {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegreeTooLarge : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class BasisMismatch : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class Unsupported : public Error {
public:
    using Error::Error;
};

class DegenerateTrace : public Error {
public:
    using Error::Error;
};

class EmptyModelSet : public Error {
public:
    using Error::Error;
};

class EmptyTrainingSet : public Error {
public:
    using Error::Error;
};

/// Input could not be parsed. `line()` is 1-based, or 0 when the failure has
/// no meaningful line (e.g. malformed XML reported by the XML reader).
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& reason)
        : Error(line ? "line " + std::to_string(line) + ": " + reason : reason),
          line_(line), reason_(reason) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t line_;
    std::string reason_;
};

}  // namespace inkbasis
