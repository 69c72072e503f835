#pragma once

#include <stdexcept>

namespace barnorm {

/// The matrices share an invariant line; the relaxation iteration is not
/// defined for such families unless explicitly forced.
class ReducibleSetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exhaustive product enumeration would exceed the configured chain cap.
class CapExceededError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace barnorm
