// Copyright 2026 The atomradio Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "atomradio/config.hpp"

namespace atomradio {

struct SelfTestCheck {
  std::string name;
  bool passed = false;
  bool skipped = false;
  /// Measured values vs. bounds, or the failure reason.
  std::string detail;
};

struct SelfTestReport {
  std::vector<SelfTestCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.skipped && !c.passed) return false;
    }
    return true;
  }
};

/// Runs the invariant suites against the given configuration: evolution
/// integrity (trace / Hermiticity / positivity over random drives at the
/// configured decoherence and step settings), steady state vs. long-time
/// integration, and small-signal first-order response for both modulation
/// modes. Failures are reported in the result, never thrown.
SelfTestReport run_selftest(const RunConfig& config);

}  // namespace atomradio
