#pragma once

#include <stdexcept>
#include <string>

namespace jc2a {

// Error taxonomy. The CLI maps these onto exit codes: configuration and
// usage errors -> 2, file/format errors -> 3, internal invariant
// violations -> 4.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Tensor shape or dimension mismatch; messages name both shapes.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Axis or element index out of range.
class IndexError : public Error {
public:
    using Error::Error;
};

// Data fails a value-level precondition (non-binary mask, empty mask, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Malformed call arguments (empty lists, null handles).
class ArgumentError : public Error {
public:
    using Error::Error;
};

// Invalid configuration: bad keys, infeasible geometry, schedule violations.
class ConfigError : public Error {
public:
    using Error::Error;
};

// File content does not match the expected format (magic, version, types).
class FormatError : public Error {
public:
    using Error::Error;
};

// Filesystem-level failure: missing file, short read, write failure.
class IoError : public Error {
public:
    using Error::Error;
};

// A should-not-happen condition; indicates a bug, not bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace jc2a
