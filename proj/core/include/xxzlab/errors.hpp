#pragma once

#include <stdexcept>

namespace xxz {

// Invalid parameters or malformed input. The CLI maps this to exit code 2.
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerical failure at run time (non-convergence, gapless mode, step-size
// failure, ...). The CLI maps this to exit code 3.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace xxz
