// Copyright 2026 The eegsv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EEGSV_PROTOCOL_EER_HPP_
#define EEGSV_PROTOCOL_EER_HPP_

#include <algorithm>
#include <limits>
#include <span>
#include <vector>

#include "eegsv/error.hpp"

namespace eegsv {

/// Equal error rate. Thresholds sweep the sorted union of scores (plus +inf);
/// FAR(th) = share of impostors >= th, FRR(th) = share of targets < th. The
/// first threshold where FAR <= FRR brackets the crossing, which is linearly
/// interpolated from the previous threshold.
inline double Eer(std::span<const double> targets, std::span<const double> impostors) {
  if (targets.empty() || impostors.empty()) {
    Fail(Errc::kEmptyScores, "EER needs at least one target and one impostor score");
  }
  std::vector<double> tgt(targets.begin(), targets.end());
  std::vector<double> imp(impostors.begin(), impostors.end());
  std::sort(tgt.begin(), tgt.end());
  std::sort(imp.begin(), imp.end());
  std::vector<double> thresholds;
  thresholds.reserve(tgt.size() + imp.size() + 1);
  std::merge(tgt.begin(), tgt.end(), imp.begin(), imp.end(), std::back_inserter(thresholds));
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  thresholds.push_back(std::numeric_limits<double>::infinity());

  const double nt = static_cast<double>(tgt.size());
  const double ni = static_cast<double>(imp.size());
  double prev_far = 1.0, prev_frr = 0.0;
  for (double th : thresholds) {
    const auto below_imp = std::lower_bound(imp.begin(), imp.end(), th) - imp.begin();
    const auto below_tgt = std::lower_bound(tgt.begin(), tgt.end(), th) - tgt.begin();
    const double far = (ni - static_cast<double>(below_imp)) / ni;
    const double frr = static_cast<double>(below_tgt) / nt;
    if (far <= frr) {
      if (far == frr) return far;
      const double gap_prev = prev_far - prev_frr;  // > 0
      const double gap = far - frr;                 // < 0
      const double lambda = gap_prev / (gap_prev - gap);
      return prev_far + lambda * (far - prev_far);
    }
    prev_far = far;
    prev_frr = frr;
  }
  return 0.5;  // unreachable: FAR(+inf) = 0 <= FRR(+inf) = 1
}

inline double Eer(const std::vector<double>& targets, const std::vector<double>& impostors) {
  return Eer(std::span<const double>(targets), std::span<const double>(impostors));
}

}  // namespace eegsv

#endif  // EEGSV_PROTOCOL_EER_HPP_
