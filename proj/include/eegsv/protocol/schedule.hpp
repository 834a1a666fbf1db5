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

#ifndef EEGSV_PROTOCOL_SCHEDULE_HPP_
#define EEGSV_PROTOCOL_SCHEDULE_HPP_

#include <string>
#include <vector>

#include "eegsv/error.hpp"

namespace eegsv {

struct SentenceWindow {
  int start = 0;
  int size = 0;
};

/// Consecutive windows of N sentences over U utterances; the last window holds
/// the remainder when N does not divide U.
inline std::vector<SentenceWindow> SentenceWindows(int utterances, int n) {
  if (n < 1 || utterances < n) {
    Fail(Errc::kInvalidWindow, "need U >= N >= 1 (U=" + std::to_string(utterances) +
                                   ", N=" + std::to_string(n) + ")");
  }
  std::vector<SentenceWindow> windows;
  for (int start = 0; start < utterances; start += n) {
    windows.push_back({start, std::min(n, utterances - start)});
  }
  return windows;
}

/// Window sizes only; one entry per training step of an epoch.
inline std::vector<int> TrainStepsPerEpoch(int utterances, int n) {
  std::vector<int> sizes;
  for (const auto& w : SentenceWindows(utterances, n)) sizes.push_back(w.size);
  return sizes;
}

}  // namespace eegsv

#endif  // EEGSV_PROTOCOL_SCHEDULE_HPP_
