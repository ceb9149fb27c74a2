#pragma once

#include <stdexcept>

namespace fairdiv {

/// Malformed or inconsistent input data: bad JSON, incomplete utility
/// tables, unknown identifiers.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An enumeration or search would exceed its configured cap.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A call violated an operation's stated precondition.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace fairdiv
