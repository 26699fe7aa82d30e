#pragma once

#include <ostream>

namespace wfl::harness {

// Quick numeric checks of the update rule, its first-order reference, the
// Fisher identity, and the contour-field shape. Prints one line per check;
// returns false if any fails.
bool selftest(std::ostream& out);

}  // namespace wfl::harness
