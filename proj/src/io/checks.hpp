#pragma once

#include <string>
#include <vector>

namespace vvv::io {

struct CheckResult {
  std::string name;
  /// Largest relative defect over all samples.
  double worst = 0.0;
  double tolerance = 0.0;
  int samples = 0;
  bool passed() const { return worst <= tolerance; }
};

struct CheckOptions {
  int seeds = 20;
  std::vector<int> grids{16, 32};
  double tolerance = 1e-12;
};

/// Built-in property suite: discrete vector calculus identities, Leray
/// idempotence, Helmholtz round trip and the trilinear-form identities.
std::vector<CheckResult> run_property_checks(const CheckOptions& opts = {});

std::string format_checks(const std::vector<CheckResult>& results);

}  // namespace vvv::io
