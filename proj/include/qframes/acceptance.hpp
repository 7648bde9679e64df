// Copyright 2026 The qframes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QFRAMES_ACCEPTANCE_HPP
#define QFRAMES_ACCEPTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace qframes {

struct AcceptanceOptions {
  std::uint64_t seed = 20260101;
  /// Multiplies every acceptance tolerance. 1 is the release setting; other
  /// values exist to exercise the failure path.
  double tolerance_scale = 1.0;
  unsigned threads = 0;
};

struct CriterionResult {
  int id;
  std::string title;
  bool passed;
  /// Human-readable measured values against their thresholds.
  std::string detail;
  /// Raw measured values, used for the determinism criterion.
  std::vector<double> measurements;
};

/// Runs the eleven acceptance criteria in order.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

}  // namespace qframes

#endif  // QFRAMES_ACCEPTANCE_HPP
