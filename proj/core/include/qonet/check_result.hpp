#pragma once

#include <string>
#include <vector>

namespace qonet {

/// One verified invariant: the measured value against its threshold.
/// Advisory rows inform without affecting the overall pass verdict.
struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  bool advisory = false;
};

inline bool all_pass(const std::vector<CheckResult>& checks) {
  for (const CheckResult& c : checks) {
    if (!c.advisory && !c.pass) return false;
  }
  return true;
}

}  // namespace qonet
