#pragma once

#include <stdexcept>
#include <string>

namespace specgap {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid construction arguments or malformed input data.
class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error(what) {}
};

/// A state-space or closure size limit was exceeded.
class CapExceeded : public Error {
public:
    explicit CapExceeded(const std::string& what) : Error(what) {}
};

/// An operation requiring irreducibility was given a reducible object.
class NotIrreducible : public Error {
public:
    explicit NotIrreducible(const std::string& what) : Error(what) {}
};

/// An operation requiring reversibility was given a non-reversible object.
class NotReversible : public Error {
public:
    explicit NotReversible(const std::string& what) : Error(what) {}
};

} // namespace specgap
