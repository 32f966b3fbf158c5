#pragma once

#include <ostream>

namespace clustersim::selftest {

// Quick oracle and property checks, one PASS/FAIL line each.
// Returns the number of failures (0 = healthy build).
int run_all(std::ostream& out);

}  // namespace clustersim::selftest
