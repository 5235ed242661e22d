// Copyright 2026 The Authors.
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

#ifndef SUBDET_VERDICT_HPP_
#define SUBDET_VERDICT_HPP_

#include <algorithm>
#include <cmath>

namespace subdet {

// Equality threshold: |slack| <= tol * max(1, |bound|). The theorems assume
// exact arithmetic; the threshold is floating-point policy.
inline constexpr double kDefaultTol = 1e-9;
// Strictness threshold for "strictly tighter" verdicts.
inline constexpr double kStrictTol = 1e-12;

/// Outcome of one inequality lhs <= bound.
struct InequalityVerdict {
  double lhs = 0.0;
  double bound = 0.0;
  double slack = 0.0;   // bound - lhs
  bool holds = false;   // slack >= -tol * max(1, |bound|)
  bool equality = false;  // |slack| <= tol * max(1, |bound|)
};

inline InequalityVerdict make_verdict(double lhs, double bound,
                                      double tol = kDefaultTol) {
  InequalityVerdict v;
  v.lhs = lhs;
  v.bound = bound;
  v.slack = bound - lhs;
  const double scale = std::max(1.0, std::abs(bound));
  v.holds = v.slack >= -tol * scale;
  v.equality = std::abs(v.slack) <= tol * scale;
  return v;
}

}  // namespace subdet

#endif  // SUBDET_VERDICT_HPP_
