#pragma once

#include <stdexcept>
#include <string>

namespace cnet {

// Bad inputs (files, specs, CLI args). Mapped to exit code 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failures (non-convergence, pathological instances). Exit code 3.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace cnet
