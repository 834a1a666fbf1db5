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

#ifndef EEGSV_FEATURES_FFT_HPP_
#define EEGSV_FEATURES_FFT_HPP_

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "eegsv/error.hpp"

namespace eegsv {

// In-place iterative radix-2 FFT with precomputed twiddles and bit-reversal
// table. Size must be a power of two.
class Fft {
 public:
  explicit Fft(int n) : n_(n), twiddle_(n / 2), bitrev_(n) {
    if (n < 2 || (n & (n - 1)) != 0) {
      Fail(Errc::kInvalidArgument, "FFT size must be a power of two");
    }
    for (int k = 0; k < n / 2; ++k) {
      twiddle_[k] = std::polar(1.0, -2 * std::numbers::pi * k / n);
    }
    int bits = 0;
    while ((1 << bits) < n) ++bits;
    for (int i = 0; i < n; ++i) {
      int r = 0;
      for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1) << (bits - 1 - b);
      bitrev_[i] = r;
    }
  }

  int size() const { return n_; }

  void Forward(std::vector<std::complex<double>>* data) const {
    auto& a = *data;
    for (int i = 0; i < n_; ++i) {
      if (i < bitrev_[i]) std::swap(a[i], a[bitrev_[i]]);
    }
    for (int len = 2; len <= n_; len <<= 1) {
      const int half = len / 2;
      const int step = n_ / len;
      for (int start = 0; start < n_; start += len) {
        for (int j = 0; j < half; ++j) {
          const std::complex<double> t = twiddle_[j * step] * a[start + j + half];
          a[start + j + half] = a[start + j] - t;
          a[start + j] += t;
        }
      }
    }
  }

  /// |X_k|^2 for k = 0..n/2 of a real frame zero-padded to n.
  std::vector<double> PowerSpectrum(const std::vector<double>& frame) const {
    std::vector<std::complex<double>> buf(n_);
    for (std::size_t i = 0; i < frame.size() && i < buf.size(); ++i) buf[i] = frame[i];
    Forward(&buf);
    std::vector<double> power(n_ / 2 + 1);
    for (int k = 0; k <= n_ / 2; ++k) power[k] = std::norm(buf[k]);
    return power;
  }

 private:
  int n_;
  std::vector<std::complex<double>> twiddle_;
  std::vector<int> bitrev_;
};

}  // namespace eegsv

#endif  // EEGSV_FEATURES_FFT_HPP_
