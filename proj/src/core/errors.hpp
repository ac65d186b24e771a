#pragma once

#include <stdexcept>
#include <string>

namespace slwin {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad argument: unknown symbol, mismatched dimensions, invalid automaton piece.
class InputError : public Error {
public:
    using Error::Error;
};

// Text format problems; carries a 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(std::string msg, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + std::move(msg)
                     : std::move(msg)),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_ = 0;
};

// Operation illegal in the current state (pop on empty window, op not
// supported by the structure, decrement of a zero counter).
class StateError : public Error {
public:
    using Error::Error;
};

// Blow-up past a configured cap (e.g. subset construction).
class ResourceError : public Error {
public:
    using Error::Error;
};

} // namespace slwin
