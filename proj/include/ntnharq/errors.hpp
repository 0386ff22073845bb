#pragma once

#include <stdexcept>

namespace ntnharq {

/// Raised when an argument violates a documented precondition.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No repetition count reaches the target BLER at the operating SNR.
class Infeasible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computed DD2A/UG2D delay fell below the UE processing minimum.
class MinDelayViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ntnharq
