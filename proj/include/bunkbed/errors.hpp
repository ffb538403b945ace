#pragma once

#include <stdexcept>
#include <string>

namespace bunkbed {

// Raised when an exact computation would exceed its configured size envelope.
// The message names the limit and, where it applies, the Monte Carlo fallback.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& message) : std::runtime_error(message) {}
};

} // namespace bunkbed
