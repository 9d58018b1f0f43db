#pragma once

#include <stdexcept>
#include <string>

namespace shiftlab {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidSubgroup : Error {
    using Error::Error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct InvalidWindow : Error {
    using Error::Error;
};

struct InvalidShape : Error {
    using Error::Error;
};

struct InvalidPattern : Error {
    using Error::Error;
};

// Raised when an enumeration or matrix exceeds the configured capacity.
// The message names the offending window or geometry.
struct CapacityError : Error {
    using Error::Error;
};

// The SFT admits no configuration on the queried window.
struct EmptySystem : Error {
    using Error::Error;
};

struct IncompleteFamily : Error {
    using Error::Error;
};

struct UnsupportedInteraction : Error {
    using Error::Error;
};

// Malformed or inconsistent system-spec input; message carries the JSON path.
struct SpecError : Error {
    using Error::Error;
};

struct InternalError : Error {
    using Error::Error;
};

} // namespace shiftlab
