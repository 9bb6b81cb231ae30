/* errors.hpp -- exception types shared across the library. */

#pragma once

#include <stdexcept>
#include <string>

namespace gsbc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Overflow of the index representation, or an operand outside the monoid.
class ArithmeticRangeError : public Error {
public:
    using Error::Error;
};

// An enumeration request whose candidate count exceeds the desk-scale guard.
class SizeGuardError : public Error {
public:
    using Error::Error;
};

// Malformed textual literal or JSON document.
class ParseError : public Error {
public:
    using Error::Error;
};

// Exact decision requested for an object that only supports approximation
// (e.g. membership of a generator-backed configuration).
class NotDecidableError : public Error {
public:
    using Error::Error;
};

// Decision-tree compilation hit the configured depth limit.
class DepthLimitError : public Error {
public:
    using Error::Error;
};

} // namespace gsbc
