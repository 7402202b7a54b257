#pragma once

#include <stdexcept>
#include <string>

namespace adlab {

// Invalid user-supplied configuration: grid extents, profile parameters,
// malformed config files, out-of-domain arguments to evaluators.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// Time integration produced non-finite values.
struct StabilityError : std::runtime_error {
    StabilityError(double t_arg, long step_count_arg, const std::string& what_arg)
        : std::runtime_error(what_arg), t(t_arg), step_count(step_count_arg) {}
    double t;
    long step_count;
};

}  // namespace adlab
