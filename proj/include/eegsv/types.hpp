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

#ifndef EEGSV_TYPES_HPP_
#define EEGSV_TYPES_HPP_

#include <Eigen/Dense>

namespace eegsv {

/// Channels x samples, one channel per contiguous row.
using EegSignal = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Frames x dims, one frame per contiguous row.
using FrameMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr int kAudioRate = 16000;
inline constexpr int kEegRate = 1000;
inline constexpr int kFrameRate = 100;
inline constexpr int kDefaultChannels = 31;

}  // namespace eegsv

#endif  // EEGSV_TYPES_HPP_
