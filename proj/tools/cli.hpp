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

#ifndef EEGSV_TOOLS_CLI_HPP_
#define EEGSV_TOOLS_CLI_HPP_

#include <string>
#include <vector>

#include "eegsv/error.hpp"

namespace eegsv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitCompat = 4;

/// Process exit code for a library error.
int ExitCodeFor(Errc code);

/// Entry point of the `eegsv` tool. argv[0] is the program name.
int Run(const std::vector<std::string>& args);
int Run(int argc, const char* const* argv);

}  // namespace eegsv::cli

#endif  // EEGSV_TOOLS_CLI_HPP_
