#pragma once

#include <vector>

namespace wfl::rl {

// One replay record. The stored action is the executed (clipped) one, and
// b_density is the behavior-mixture density evaluated at that same action
// when it was collected.
struct Transition {
  std::vector<double> s;
  std::vector<double> a;
  double r_plus = 0.0;   // >= 0
  double r_minus = 0.0;  // <= 0
  std::vector<double> s_next;
  bool terminal = false;
  double b_density = 1.0;
};

}  // namespace wfl::rl
