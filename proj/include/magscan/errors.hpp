#pragma once
#include <stdexcept>
#include <string>

namespace magscan {

// Failure of an iterative numerical procedure (non-convergence, singular
// solve, runaway search, ...).
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Grid/window too coarse for the requested computation. Carries the
// smallest grid size that would be admissible when known.
struct resolution_error : std::runtime_error {
    std::size_t min_n = 0;
    explicit resolution_error(const std::string& msg, std::size_t min_admissible_n = 0)
        : std::runtime_error(msg), min_n(min_admissible_n) {}
};

// Inconsistent domain/field/run configuration.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace magscan
