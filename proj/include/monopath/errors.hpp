#pragma once

#include <stdexcept>
#include <string>

namespace monopath {

// Rejected input or unmet caller contract. The CLI maps this to exit code 2.
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// A property the construction certifies failed to hold. Any occurrence is a bug
// or a broken hypothesis, never a user error. The CLI maps this to exit code 3.
struct InvariantViolation : std::logic_error {
    explicit InvariantViolation(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace monopath
