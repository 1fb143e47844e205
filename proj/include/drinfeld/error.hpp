#pragma once

#include <stdexcept>
#include <string>

namespace drinfeld {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A comparison or division could not be resolved at the working precision.
struct PrecisionError : Error {
    using Error::Error;
};

// Input outside the operation's domain (non-prime p, singular matrix, bad type tuple, ...).
struct DomainError : Error {
    using Error::Error;
};

// An enumeration would exceed its configured cap.
struct CapExceeded : Error {
    using Error::Error;
};

}  // namespace drinfeld
