// Copyright 2026 The cvnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "cvnet/errors.hpp"
#include "cvnet/quad.hpp"

namespace cvnet {

/// Two-mode squeezing strength r = gamma * tau, r >= 0.
class SqueezeParam {
 public:
  explicit SqueezeParam(double r) : r_(r) {
    if (!std::isfinite(r) || r < 0.0) {
      throw DomainError("squeezing parameter must be finite and >= 0, got " +
                        std::to_string(r));
    }
  }
  double value() const { return r_; }
  /// Intensity gain of the generating four-wave-mixing process, cosh^2 r.
  double gain() const { return std::cosh(r_) * std::cosh(r_); }

 private:
  double r_;
};

/// Intensity gain G >= 1.
class GainParam {
 public:
  explicit GainParam(double g) : g_(g) {
    if (!std::isfinite(g) || g < 1.0) {
      throw DomainError("gain must be >= 1, got " + std::to_string(g));
    }
  }
  double value() const { return g_; }

 private:
  double g_;
};

/// Two-mode squeezer over two fresh seeds (s, v):
///   x1 = (e^r x_s + e^-r x_v)/sqrt2,  p1 = (e^-r p_s + e^r p_v)/sqrt2
///   x2 = (e^r x_s - e^-r x_v)/sqrt2,  p2 = (e^-r p_s - e^r p_v)/sqrt2
/// At r = 0 the outputs are vacuum statistically, not on seed labels.
inline std::pair<OpticalMode, OpticalMode> two_mode_squeeze(
    SeedRegistry& registry, SqueezeParam r) {
  const OpticalMode s = vacuum_mode(registry);
  const OpticalMode v = vacuum_mode(registry);
  const double up = std::exp(r.value()) / std::sqrt(2.0);
  const double down = std::exp(-r.value()) / std::sqrt(2.0);
  OpticalMode first{up * s.x + down * v.x, down * s.p + up * v.p};
  OpticalMode second{up * s.x - down * v.x, down * s.p - up * v.p};
  return {std::move(first), std::move(second)};
}

/// Phase-insensitive amplifier a' = sqrt(G) a_sig + sqrt(G-1) a_idl^dagger.
/// The conjugate port is discarded.
inline OpticalMode parametric_amplify(const OpticalMode& signal,
                                      const OpticalMode& idler, GainParam g) {
  const double ks = std::sqrt(g.value());
  const double ki = std::sqrt(g.value() - 1.0);
  return {ks * signal.x + ki * idler.x, ks * signal.p - ki * idler.p};
}

/// sqrt(t) in1 - sqrt(1-t) in2 on both sectors.
inline OpticalMode beam_split(const OpticalMode& in1, const OpticalMode& in2,
                              double transmission) {
  if (!(transmission >= 0.0 && transmission <= 1.0)) {
    throw DomainError("transmission must lie in [0, 1], got " +
                      std::to_string(transmission));
  }
  const double kt = std::sqrt(transmission);
  const double kr = std::sqrt(1.0 - transmission);
  return {kt * in1.x - kr * in2.x, kt * in1.p - kr * in2.p};
}

/// Half-wave plate plus PBS: (+) = cos(t) h + sin(t) v, (-) = -sin(t) h + cos(t) v.
inline std::pair<OpticalMode, OpticalMode> polarization_combine(
    const OpticalMode& horizontal, const OpticalMode& vertical, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  OpticalMode plus{c * horizontal.x + s * vertical.x,
                   c * horizontal.p + s * vertical.p};
  OpticalMode minus{-s * horizontal.x + c * vertical.x,
                    -s * horizontal.p + c * vertical.p};
  return {std::move(plus), std::move(minus)};
}

struct ElectroOpticReport {
  double pa_signal = 0.0;  // sqrt(G)
  double pa_idler = 0.0;   // sqrt(G-1)
  double eo_signal = 0.0;  // K
  double eo_idler = 0.0;   // K
  /// Ratio of the amplifier's idler coefficient to the feed-forward one.
  double deviation = 0.0;
};

/// Compares the amplifier coefficients with the homodyne feed-forward signal
/// K (a2 + a3^dagger) at K = sqrt(G).
inline ElectroOpticReport electro_optic_equivalence(GainParam g) {
  ElectroOpticReport r;
  r.pa_signal = std::sqrt(g.value());
  r.pa_idler = std::sqrt(g.value() - 1.0);
  r.eo_signal = r.pa_signal;
  r.eo_idler = r.pa_signal;
  r.deviation = r.pa_idler / r.eo_idler;
  return r;
}

}  // namespace cvnet
