#pragma once

#include <stdexcept>
#include <string>

namespace qsm {

// Setup-time violation of a protocol or experiment constraint
// (non-prime d, d <= (kappa-1)n, conflicting flags, ...).
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The requested backend cannot represent the requested parameters,
// e.g. the stabilizer tableau with d = 2.
struct unsupported_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace qsm
