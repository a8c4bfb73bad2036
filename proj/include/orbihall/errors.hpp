#pragma once

#include <stdexcept>
#include <string>

namespace orbihall {

// Raised when inputs violate a documented precondition.
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when a numerical procedure fails (non-convergence, collision audit, degeneracy).
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when an operation is asked for something it does not support (e.g. irrational flux).
class unsupported_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace orbihall
