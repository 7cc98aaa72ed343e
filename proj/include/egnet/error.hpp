#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace egnet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input data (unreadable file, ragged rows, bad cells).
class DataError : public Error {
public:
    using Error::Error;
};

/// Arguments that violate an operation's preconditions.
class ArgumentError : public Error {
public:
    using Error::Error;
};

using PlayerId = std::size_t;

}  // namespace egnet
