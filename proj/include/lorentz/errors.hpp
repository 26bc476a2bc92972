#pragma once

#include <stdexcept>
#include <string>

namespace lorentz {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Geometry admits an unblocked corridor; carries the offending direction.
struct InfiniteHorizonError : Error {
    InfiniteHorizonError(double dx, double dy)
        : Error("infinite horizon: open corridor along direction (" +
                std::to_string(dx) + ", " + std::to_string(dy) + ")"),
          dir_x(dx), dir_y(dy) {}
    double dir_x, dir_y;
};

/// A free flight exceeded the certified bound; indicates a geometry or
/// tolerance bug, not a recoverable condition.
struct NoCollisionWithinHorizon : Error {
    using Error::Error;
};

struct HoleTooLarge : Error {
    using Error::Error;
};

struct StepBudgetExceeded : Error {
    using Error::Error;
};

struct TruncationRequired : Error {
    using Error::Error;
};

struct SizeExceeded : Error {
    using Error::Error;
};

struct TooFewSamples : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace lorentz
