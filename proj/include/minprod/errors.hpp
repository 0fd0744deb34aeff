#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace minprod {

// Base of the engine's error taxonomy. Each failure mode the callers (and the
// CLI exit-status mapping) need to distinguish gets its own type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A spectrum entry lies above the completeness bound it claims.
class EntryAboveBound : public Error {
public:
    using Error::Error;
};

class NonPositiveMultiplicity : public Error {
public:
    using Error::Error;
};

class NonPositiveScale : public Error {
public:
    using Error::Error;
};

// The truncation is too shallow to certify the requested quantity
// ("did not enumerate enough"). Messages name the required bounds.
class BoundExceeded : public Error {
public:
    using Error::Error;
};

// The fact is fundamentally unavailable from the given descriptors
// ("cannot know"), e.g. a Facts-only factor lacks a Jacobi spectrum.
class InsufficientData : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

class InvariantViolation : public Error {
public:
    using Error::Error;
};

// Isoparametric hypersurfaces only exist for g in {1,2,3,4,6}.
class InvalidG : public Error {
public:
    using Error::Error;
};

// Classification requested on an average-only S value.
class NotConstant : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message), position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

}  // namespace minprod
