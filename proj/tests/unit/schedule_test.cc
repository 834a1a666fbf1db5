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

#include <gtest/gtest.h>

#include "eegsv/protocol/schedule.hpp"
#include "test_util.hpp"

namespace eegsv {
namespace {

TEST(ScheduleTest, NinetyByThree) {
  const auto sizes = TrainStepsPerEpoch(90, 3);
  EXPECT_EQ(sizes.size(), 30u);
  for (int s : sizes) EXPECT_EQ(s, 3);
}

TEST(ScheduleTest, NinetyByTwentyIsRagged) {
  EXPECT_EQ(TrainStepsPerEpoch(90, 20), (std::vector<int>{20, 20, 20, 20, 10}));
  const auto windows = SentenceWindows(90, 20);
  EXPECT_EQ(windows.back().start, 80);
}

TEST(ScheduleTest, SingleWindow) {
  EXPECT_EQ(TrainStepsPerEpoch(90, 90), std::vector<int>{90});
}

TEST(ScheduleTest, SentenceGridCoversEveryUtteranceOnce) {
  for (int n : {3, 5, 7, 10, 15, 20, 30}) {
    const auto windows = SentenceWindows(90, n);
    EXPECT_EQ(windows.size(), static_cast<std::size_t>((90 + n - 1) / n));
    int next = 0;
    for (const auto& w : windows) {
      EXPECT_EQ(w.start, next);
      next += w.size;
    }
    EXPECT_EQ(next, 90);
  }
}

TEST(ScheduleTest, InvalidWindows) {
  EXPECT_ERRC(SentenceWindows(90, 0), Errc::kInvalidWindow);
  EXPECT_ERRC(SentenceWindows(5, 6), Errc::kInvalidWindow);
}

}  // namespace
}  // namespace eegsv
