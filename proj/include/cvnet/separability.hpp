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

#include <array>
#include <cmath>

#include "cvnet/elements.hpp"
#include "cvnet/errors.hpp"
#include "cvnet/quad.hpp"

namespace cvnet {

/// Second moments of a mode pair (A, B) in the standard form
///
///   | n1  0  c1  0 |
///   |  0 n2   0 c2 |
///   | c1  0  m1  0 |
///   |  0 c2   0 m2 |
///
/// ordered (x_A, p_A, x_B, p_B), vacuum level 1/4.
struct CovarianceBlock {
  double n1 = kVacuumVariance;
  double n2 = kVacuumVariance;
  double m1 = kVacuumVariance;
  double m2 = kVacuumVariance;
  double c1 = 0.0;
  double c2 = 0.0;

  std::array<std::array<double, 4>, 4> matrix() const {
    return {{{n1, 0.0, c1, 0.0},
             {0.0, n2, 0.0, c2},
             {c1, 0.0, m1, 0.0},
             {0.0, c2, 0.0, m2}}};
  }
};

inline CovarianceBlock correlation_block(const OpticalMode& a,
                                         const OpticalMode& b) {
  if (a.registry() != b.registry()) {
    throw UsageError("correlation_block: modes belong to different registries");
  }
  return {second_moment(a.x, a.x), second_moment(a.p, a.p),
          second_moment(b.x, b.x), second_moment(b.p, b.p),
          second_moment(a.x, b.x), second_moment(a.p, b.p)};
}

struct DuanReport {
  double a_sq = 0.0;
  double u_var = 0.0;
  double v_var = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  bool separable = false;
};

inline constexpr double kSeparabilityTolerance = 1e-12;

/// EPR-like variances u = a x_A - sgn(c1) x_B / a, v = a p_A - sgn(c2) p_B / a
/// with a^2 = sqrt((m1 - 1/4)/(n1 - 1/4)), tested against a^2/2 + 1/(2 a^2).
/// A negative margin certifies entanglement.
inline DuanReport duan_margin(const CovarianceBlock& block) {
  if (!(block.n1 > kVacuumVariance) || !(block.m1 > kVacuumVariance)) {
    throw CriterionUndefinedError(
        "criterion-undefined: Duan weight needs n1 > 1/4 and m1 > 1/4");
  }
  const auto sign = [](double c) { return c < 0.0 ? -1.0 : 1.0; };
  DuanReport r;
  r.a_sq = std::sqrt((block.m1 - kVacuumVariance) / (block.n1 - kVacuumVariance));
  const double inv = 1.0 / r.a_sq;
  r.u_var = r.a_sq * block.n1 + inv * block.m1 - 2.0 * sign(block.c1) * block.c1;
  r.v_var = r.a_sq * block.n2 + inv * block.m2 - 2.0 * sign(block.c2) * block.c2;
  r.bound = 0.5 * r.a_sq + 0.5 * inv;
  r.margin = r.u_var + r.v_var - r.bound;
  r.separable = r.margin >= -kSeparabilityTolerance;
  return r;
}

/// Factored closed form whose sign tracks the Duan margin of (a1, a2').
inline double lemma1_sign(SqueezeParam r1, SqueezeParam r2, GainParam g3) {
  const double ch1 = std::cosh(2.0 * r1.value());
  const double ch2 = std::cosh(2.0 * r2.value());
  return (ch1 - 1.0) * (g3.value() * (ch2 - 1.0) - (ch2 + 1.0));
}

}  // namespace cvnet
