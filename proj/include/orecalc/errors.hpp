#pragma once

#include <stdexcept>
#include <string>

namespace orecalc {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operands from different coefficient domains or signatures were combined.
class DomainMismatch : public Error {
public:
    using Error::Error;
};

// A mathematical precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Malformed textual input.
class ParseError : public Error {
public:
    ParseError(const std::string &msg, std::size_t pos)
        : Error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

} // namespace orecalc
