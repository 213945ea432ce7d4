#pragma once

#include <stdexcept>
#include <string>

namespace qs2 {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Division by zero, evaluation at a pole.
class DomainError : public Error {
public:
    using Error::Error;
};

// A violated precondition: wrong degree, twist mismatch, arity mismatch.
class ContractError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " at position " + std::to_string(pos)), pos_(pos) {}

    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

// A malformed chain file; `where` is a line/column or a field path.
class FormatError : public Error {
public:
    FormatError(const std::string& source, const std::string& where, const std::string& msg)
        : Error(source + ": " + where + ": " + msg) {}
};

} // namespace qs2
