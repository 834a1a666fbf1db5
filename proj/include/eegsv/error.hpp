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

#ifndef EEGSV_ERROR_HPP_
#define EEGSV_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace eegsv {

enum class Errc {
  kParseError,
  kMissingFile,
  kSplitOverlap,
  kInvalidArgument,
  kIoError,
  kNotFound,
  kRateMismatch,
  kFormatError,
  kInvalidBand,
  kNonFiniteInput,
  kTooShort,
  kChannelCountMismatch,
  kIdentityMismatch,
  kRankDeficient,
  kInsufficientData,
  kDimMismatch,
  kNonFiniteActivation,
  kStaleCache,
  kNeedTwoUtterances,
  kNonUnitDvec,
  kInvalidWindow,
  kFeatureMissing,
  kDegenerateBatch,
  kTooFewWindows,
  kEmptyScores,
  kVersionMismatch,
};

inline const char* ErrcName(Errc code) {
  switch (code) {
    case Errc::kParseError: return "ParseError";
    case Errc::kMissingFile: return "MissingFile";
    case Errc::kSplitOverlap: return "SplitOverlap";
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kIoError: return "IoError";
    case Errc::kNotFound: return "NotFound";
    case Errc::kRateMismatch: return "RateMismatch";
    case Errc::kFormatError: return "FormatError";
    case Errc::kInvalidBand: return "InvalidBand";
    case Errc::kNonFiniteInput: return "NonFiniteInput";
    case Errc::kTooShort: return "TooShort";
    case Errc::kChannelCountMismatch: return "ChannelCountMismatch";
    case Errc::kIdentityMismatch: return "IdentityMismatch";
    case Errc::kRankDeficient: return "RankDeficient";
    case Errc::kInsufficientData: return "InsufficientData";
    case Errc::kDimMismatch: return "DimMismatch";
    case Errc::kNonFiniteActivation: return "NonFiniteActivation";
    case Errc::kStaleCache: return "StaleCache";
    case Errc::kNeedTwoUtterances: return "NeedTwoUtterances";
    case Errc::kNonUnitDvec: return "NonUnitDvec";
    case Errc::kInvalidWindow: return "InvalidWindow";
    case Errc::kFeatureMissing: return "FeatureMissing";
    case Errc::kDegenerateBatch: return "DegenerateBatch";
    case Errc::kTooFewWindows: return "TooFewWindows";
    case Errc::kEmptyScores: return "EmptyScores";
    case Errc::kVersionMismatch: return "VersionMismatch";
  }
  return "Unknown";
}

/// Every recoverable failure in the toolkit is reported as an Error carrying
/// one of the codes above; the message is meant for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(ErrcName(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void Fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace eegsv

#endif  // EEGSV_ERROR_HPP_
