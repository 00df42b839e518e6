#ifndef DMDSEG_ERRORS_HPP
#define DMDSEG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dmdseg {

/// Invalid arguments, malformed configuration, violated preconditions.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Missing, unreadable or ill-formed files.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure: rank-zero input, solver non-convergence.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace dmdseg

#endif
