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

#ifndef EEGSV_EEGSV_HPP_
#define EEGSV_EEGSV_HPP_

#include "eegsv/dataset/manifest.hpp"
#include "eegsv/dataset/synth.hpp"
#include "eegsv/dsp/biquad.hpp"
#include "eegsv/dsp/preprocess.hpp"
#include "eegsv/error.hpp"
#include "eegsv/fp_mode.hpp"
#include "eegsv/features/eeg_features.hpp"
#include "eegsv/features/feature_sequence.hpp"
#include "eegsv/features/mfcc.hpp"
#include "eegsv/features/pipeline.hpp"
#include "eegsv/kpca/kpca.hpp"
#include "eegsv/model/checkpoint.hpp"
#include "eegsv/model/encoder.hpp"
#include "eegsv/model/ge2e.hpp"
#include "eegsv/protocol/eer.hpp"
#include "eegsv/protocol/evaluator.hpp"
#include "eegsv/protocol/feature_store.hpp"
#include "eegsv/protocol/schedule.hpp"
#include "eegsv/protocol/trainer.hpp"
#include "eegsv/version.hpp"

#endif  // EEGSV_EEGSV_HPP_
