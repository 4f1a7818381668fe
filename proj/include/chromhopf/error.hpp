#pragma once

#include <stdexcept>
#include <string>

namespace chromhopf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed argument or input data (bad partition, unknown vertex, schema violation, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A configured size or budget bound was exceeded.
class BoundExceeded : public Error {
public:
    using Error::Error;
};

/// An exact k-th root was requested for a rational that is not a perfect k-th power.
class NoExactRoot : public Error {
public:
    using Error::Error;
};

} // namespace chromhopf
