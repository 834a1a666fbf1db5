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

#ifndef EEGSV_FP_MODE_HPP_
#define EEGSV_FP_MODE_HPP_

#if defined(__SSE__) || defined(_M_X64)
#include <pmmintrin.h>
#include <xmmintrin.h>
#define EEGSV_HAVE_MXCSR 1
#endif

namespace eegsv {

/// Flushes subnormal floats to zero for the lifetime of the object and
/// restores the previous mode afterwards. Vanishing BPTT gradients otherwise
/// spend most of the backward pass in subnormal arithmetic.
class ScopedFlushDenormals {
 public:
  ScopedFlushDenormals() {
#ifdef EEGSV_HAVE_MXCSR
    saved_ = _mm_getcsr();
    _MM_SET_FLUSH_ZERO_MODE(_MM_FLUSH_ZERO_ON);
    _MM_SET_DENORMALS_ZERO_MODE(_MM_DENORMALS_ZERO_ON);
#endif
  }
  ~ScopedFlushDenormals() {
#ifdef EEGSV_HAVE_MXCSR
    _mm_setcsr(saved_);
#endif
  }
  ScopedFlushDenormals(const ScopedFlushDenormals&) = delete;
  ScopedFlushDenormals& operator=(const ScopedFlushDenormals&) = delete;

 private:
  unsigned int saved_ = 0;
};

}  // namespace eegsv

#endif  // EEGSV_FP_MODE_HPP_
