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

#ifndef EEGSV_DSP_BIQUAD_HPP_
#define EEGSV_DSP_BIQUAD_HPP_

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "eegsv/error.hpp"

namespace eegsv::dsp {

/// One second-order section, a0 normalized to 1:
///   H(z) = (b0 + b1 z^-1 + b2 z^-2) / (1 + a1 z^-1 + a2 z^-2)
struct Biquad {
  double b0 = 1, b1 = 0, b2 = 0;
  double a1 = 0, a2 = 0;

  std::complex<double> Response(double omega) const {
    const std::complex<double> z1 = std::polar(1.0, -omega);
    const std::complex<double> z2 = z1 * z1;
    return (b0 + b1 * z1 + b2 * z2) / (1.0 + a1 * z1 + a2 * z2);
  }

  /// Largest pole magnitude of the section.
  double PoleRadius() const {
    const std::complex<double> disc = std::sqrt(std::complex<double>(a1 * a1 - 4 * a2));
    return std::max(std::abs((-a1 + disc) / 2.0), std::abs((-a1 - disc) / 2.0));
  }
};

enum class FilterKind { kBandpass, kNotch };

struct BiquadCascade {
  std::vector<Biquad> sections;
  FilterKind kind = FilterKind::kBandpass;
  double f_low = 0;     // bandpass lower edge, or notch centre
  double f_high = 0;    // bandpass upper edge, or notch Q
  double sample_rate = 0;

  std::complex<double> Response(double freq_hz) const {
    const double omega = 2 * std::numbers::pi * freq_hz / sample_rate;
    std::complex<double> h = 1.0;
    for (const Biquad& s : sections) h *= s.Response(omega);
    return h;
  }

  double MagnitudeDb(double freq_hz) const {
    return 20 * std::log10(std::abs(Response(freq_hz)));
  }

  bool IsStable(double margin = 1e-9) const {
    for (const Biquad& s : sections) {
      if (!(s.PoleRadius() < 1 - margin)) return false;
    }
    return true;
  }
};

namespace internal {

// Biquad with the given conjugate (or real) pole pair and numerator taps.
inline Biquad SectionFromPoles(std::complex<double> p1, std::complex<double> p2,
                               double b0, double b1, double b2) {
  Biquad s;
  s.b0 = b0;
  s.b1 = b1;
  s.b2 = b2;
  s.a1 = -(p1 + p2).real();
  s.a2 = (p1 * p2).real();
  return s;
}

}  // namespace internal

/// Butterworth bandpass by bilinear transform with prewarped band edges.
/// `order` is the total filter order (2 per section).
inline BiquadCascade DesignBandpass(double f_low, double f_high, double fs,
                                    int order = 4) {
  if (!(f_low > 0 && f_low < f_high && f_high < fs / 2)) {
    Fail(Errc::kInvalidBand, "bandpass needs 0 < f_low < f_high < fs/2, got [" +
                                 std::to_string(f_low) + ", " +
                                 std::to_string(f_high) + "] at fs=" +
                                 std::to_string(fs));
  }
  if (order != 2 && order != 4 && order != 6 && order != 8) {
    Fail(Errc::kInvalidBand, "bandpass order must be one of 2, 4, 6, 8");
  }
  using C = std::complex<double>;
  const double pi = std::numbers::pi;
  const double k = 2 * fs;
  const double w1 = k * std::tan(pi * f_low / fs);
  const double w2 = k * std::tan(pi * f_high / fs);
  const double bw = w2 - w1;
  const double w0sq = w1 * w2;

  // Lowpass prototype poles -> analog bandpass poles -> z-plane. The set is
  // closed under conjugation; sections take one pair each.
  const int proto_order = order / 2;
  std::vector<C> upper;
  std::vector<double> real_poles;
  for (int m = 0; m < proto_order; ++m) {
    const C p = std::polar(1.0, pi * (2.0 * m + proto_order + 1) / (2.0 * proto_order));
    const C half = p * bw / 2.0;
    const C root = std::sqrt(half * half - w0sq);
    for (C s : {half + root, half - root}) {
      const C z = (k + s) / (k - s);
      if (std::abs(z.imag()) <= 1e-12) {
        real_poles.push_back(z.real());
      } else if (z.imag() > 0) {
        upper.push_back(z);
      }
    }
  }

  BiquadCascade cascade;
  cascade.kind = FilterKind::kBandpass;
  cascade.f_low = f_low;
  cascade.f_high = f_high;
  cascade.sample_rate = fs;
  // Every section carries one zero at z = 1 and one at z = -1.
  for (const C& z : upper) {
    cascade.sections.push_back(internal::SectionFromPoles(z, std::conj(z), 1, 0, -1));
  }
  for (std::size_t i = 0; i + 1 < real_poles.size(); i += 2) {
    cascade.sections.push_back(
        internal::SectionFromPoles(real_poles[i], real_poles[i + 1], 1, 0, -1));
  }

  // Unit gain at the (digital) geometric centre frequency.
  const double f_center = fs / pi * std::atan(std::sqrt(w0sq) / k);
  const double gain = std::abs(cascade.Response(f_center));
  const double per_section =
      std::pow(gain, -1.0 / static_cast<double>(cascade.sections.size()));
  for (Biquad& s : cascade.sections) {
    s.b0 *= per_section;
    s.b1 *= per_section;
    s.b2 *= per_section;
  }
  return cascade;
}

/// Second-order IIR notch; -3 dB bandwidth is f_center / quality.
inline BiquadCascade DesignNotch(double f_center, double fs, double quality = 30) {
  if (!(f_center > 0 && f_center < fs / 2)) {
    Fail(Errc::kInvalidBand, "notch centre must lie in (0, fs/2), got " +
                                 std::to_string(f_center) + " at fs=" +
                                 std::to_string(fs));
  }
  if (!(quality > 0)) Fail(Errc::kInvalidBand, "notch quality must be positive");
  const double w0 = 2 * std::numbers::pi * f_center / fs;
  const double alpha = std::sin(w0) / (2 * quality);
  const double a0 = 1 + alpha;
  Biquad s;
  s.b0 = 1 / a0;
  s.b1 = -2 * std::cos(w0) / a0;
  s.b2 = 1 / a0;
  s.a1 = -2 * std::cos(w0) / a0;
  s.a2 = (1 - alpha) / a0;
  BiquadCascade cascade;
  cascade.kind = FilterKind::kNotch;
  cascade.f_low = f_center;
  cascade.f_high = quality;
  cascade.sample_rate = fs;
  cascade.sections.push_back(s);
  return cascade;
}

/// Causal transposed direct-form II filtering from zero state.
template <typename T>
std::vector<T> Apply(const BiquadCascade& cascade, std::span<const T> x) {
  for (const T& v : x) {
    if (!std::isfinite(static_cast<double>(v))) {
      Fail(Errc::kNonFiniteInput, "filter input contains a non-finite sample");
    }
  }
  std::vector<double> y(x.begin(), x.end());
  for (const Biquad& s : cascade.sections) {
    double z1 = 0, z2 = 0;
    for (double& v : y) {
      const double in = v;
      const double out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      v = out;
    }
  }
  return std::vector<T>(y.begin(), y.end());
}

template <typename T>
std::vector<T> Apply(const BiquadCascade& cascade, const std::vector<T>& x) {
  return Apply(cascade, std::span<const T>(x));
}

}  // namespace eegsv::dsp

#endif  // EEGSV_DSP_BIQUAD_HPP_
