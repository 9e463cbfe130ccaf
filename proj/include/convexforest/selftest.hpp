#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace convexforest {

struct SelfTestCheck {
  std::string name;
  bool passed;
  std::string detail;
};

// Desk-scale cross-checks of every module against the slow oracles.
std::vector<SelfTestCheck> RunSelfTest(std::uint64_t seed, int jobs);

}  // namespace convexforest
