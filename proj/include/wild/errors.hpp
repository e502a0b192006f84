#pragma once

#include <stdexcept>
#include <string>

namespace wild {

// Vacuum formation: the star-pressure function has no positive root, or a
// local fan inside a scheme produced one.
struct VacuumError : std::runtime_error {
    explicit VacuumError(const std::string& what) : std::runtime_error(what) {}
};

// Root-finder failure; the message carries the iteration trace.
struct RootFindError : std::runtime_error {
    explicit RootFindError(const std::string& what) : std::runtime_error(what) {}
};

// Evolution stopped early (positivity loss or gradient blow-up); carries the
// last time at which the field was still usable.
struct BlowupError : std::runtime_error {
    double last_safe_time;
    BlowupError(const std::string& what, double t)
        : std::runtime_error(what + " (last safe time " + std::to_string(t) + ")"),
          last_safe_time(t) {}
};

}  // namespace wild
