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

#ifndef EEGSV_RANDOM_HPP_
#define EEGSV_RANDOM_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace eegsv {

using Rng = std::mt19937_64;

// Independent, reproducible generator for a named stream. Each component of
// `key` (dataset seed, subject index, sentence index, stream tag, ...) feeds
// the seed sequence, so streams never share state.
inline Rng MakeStream(std::initializer_list<std::uint64_t> key) {
  std::vector<std::uint32_t> words;
  words.reserve(key.size() * 2);
  for (std::uint64_t k : key) {
    words.push_back(static_cast<std::uint32_t>(k & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(k >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

}  // namespace eegsv

#endif  // EEGSV_RANDOM_HPP_
