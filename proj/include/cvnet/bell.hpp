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

// Photon-pair rates, conditional correlators and the conditional Bell value.
//
// A rate R^{a,c} is the Gaussian (Wick) reduction of
// <(x_a^2 + p_a^2 - 1/2)(x_c^2 + p_c^2 - 1/2)>:
//   2(<x_a x_c>^2 + <p_a p_c>^2 + <x_a p_c>^2 + <p_a x_c>^2)
//     + (<x_a^2> + <p_a^2> - 1/2)(<x_c^2> + <p_c^2> - 1/2).

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "cvnet/chain.hpp"
#include "cvnet/errors.hpp"
#include "cvnet/parallel.hpp"
#include "cvnet/quad.hpp"

namespace cvnet {

enum class Outcome { Plus = 0, Minus = 1 };

inline int sign_of(Outcome o) { return o == Outcome::Plus ? 1 : -1; }

/// CHSH weights: +1 for (0,0), (0,1), (1,0) and -1 for (1,1).
inline int chsh_sign(int x, int z) { return (x == 1 && z == 1) ? -1 : 1; }

inline double photon_pair_rate(const OpticalMode& a, const OpticalMode& c) {
  const double xx = second_moment(a.x, c.x);
  const double pp = second_moment(a.p, c.p);
  const double xp = second_moment(a.x, c.p);
  const double px = second_moment(a.p, c.x);
  const double na = second_moment(a.x, a.x) + second_moment(a.p, a.p) -
                    2.0 * kVacuumVariance;
  const double nc = second_moment(c.x, c.x) + second_moment(c.p, c.p) -
                    2.0 * kVacuumVariance;
  return 2.0 * (xx * xx + pp * pp + xp * xp + px * px) + na * nc;
}

inline double photon_pair_rate(const BellNetwork& net, Outcome a, Outcome c,
                               int x, int z) {
  const MeasuredModes m = net.measure(x, z);
  const OpticalMode& alice = a == Outcome::Plus ? m.a_plus : m.a_minus;
  const OpticalMode& charlie = c == Outcome::Plus ? m.c_plus : m.c_minus;
  return photon_pair_rate(alice, charlie);
}

/// Rates for one setting pair, indexed [a][c] with Outcome values.
using RateBlock = std::array<std::array<double, 2>, 2>;

inline RateBlock rate_block(const BellNetwork& net, int x, int z) {
  const MeasuredModes m = net.measure(x, z);
  return {{{photon_pair_rate(m.a_plus, m.c_plus),
            photon_pair_rate(m.a_plus, m.c_minus)},
           {photon_pair_rate(m.a_minus, m.c_plus),
            photon_pair_rate(m.a_minus, m.c_minus)}}};
}

inline double correlator_from_rates(const RateBlock& r) {
  const double same = r[0][0] + r[1][1];
  const double diff = r[0][1] + r[1][0];
  const double total = same + diff;
  if (!(total > 0.0)) {
    throw NoDetectionError("no-detection: all photon-pair rates vanish");
  }
  return (same - diff) / total;
}

inline void require_detection(const BellConfig& config) {
  if (config.r1.value() == 0.0) {
    throw NoDetectionError("no-detection: r1=0 gives vanishing rates");
  }
}

inline double conditional_correlator(const BellNetwork& net, int x, int z) {
  require_detection(net.config);
  return correlator_from_rates(rate_block(net, x, z));
}

struct CorrelatorTable {
  std::array<std::array<RateBlock, 2>, 2> rates{};          // [x][z][a][c]
  std::array<std::array<double, 2>, 2> correlators{};       // [x][z]
  double bell = 0.0;
};

inline CorrelatorTable correlator_table(const BellNetwork& net) {
  require_detection(net.config);
  CorrelatorTable t;
  for (int x = 0; x < 2; ++x) {
    for (int z = 0; z < 2; ++z) {
      auto& block = t.rates[static_cast<std::size_t>(x)][static_cast<std::size_t>(z)];
      block = rate_block(net, x, z);
      const double e = correlator_from_rates(block);
      t.correlators[static_cast<std::size_t>(x)][static_cast<std::size_t>(z)] = e;
      t.bell += chsh_sign(x, z) * e;
    }
  }
  return t;
}

struct ClosedFormInputs {
  double gamma1 = 0.0;  // cosh 2r1 - 1
  double gamma2 = 0.0;  // cosh 2r1 + (2G3-2)/G3 e^{-2 r2} - 1
  double s = 0.0;       // sinh^2 2r1
};

inline ClosedFormInputs closed_form_inputs(SqueezeParam r1, SqueezeParam r2,
                                           GainParam g3) {
  const double sh = std::sinh(2.0 * r1.value());
  const double g = g3.value();
  ClosedFormInputs in;
  // cosh 2r - 1 = 2 sinh^2 r, without cancellation at small r1.
  in.gamma1 = 2.0 * std::sinh(r1.value()) * std::sinh(r1.value());
  in.gamma2 = in.gamma1 + (2.0 * g - 2.0) / g * std::exp(-2.0 * r2.value());
  in.s = sh * sh;
  return in;
}

/// -cos 2(theta+vartheta) s / (s + 2 Gamma1 Gamma2)
inline double closed_form_correlator(const ClosedFormInputs& in,
                                     double angle_sum) {
  const double denom = in.s + 2.0 * in.gamma1 * in.gamma2;
  if (!(denom > 0.0)) {
    throw NoDetectionError("no-detection: r1=0 gives vanishing rates");
  }
  return -std::cos(2.0 * angle_sum) * in.s / denom;
}

/// 2 sqrt2 s / (s + 2 Gamma1 Gamma2), valid for the default four settings.
inline double closed_form_bell(const ClosedFormInputs& in) {
  const double denom = in.s + 2.0 * in.gamma1 * in.gamma2;
  if (!(denom > 0.0)) {
    throw NoDetectionError("no-detection: r1=0 gives vanishing rates");
  }
  return 2.0 * std::numbers::sqrt2 * in.s / denom;
}

enum class BellMethod { Analytic, Engine };

/// Analytic evaluation sums the closed-form correlator over the configured
/// angles, which reduces to closed_form_bell at the default settings.
/// Engine evaluation builds the network and goes through Wick moments.
inline double bell_value(const BellConfig& config, BellMethod method) {
  require_detection(config);
  if (method == BellMethod::Engine) {
    SeedRegistry registry;
    const BellNetwork net = build_bell_network(registry, config);
    return correlator_table(net).bell;
  }
  if (!(config.g3.value() > 1.0)) {
    throw DomainError("entanglement swapping needs G3 > 1");
  }
  const ClosedFormInputs in = closed_form_inputs(config.r1, config.r2, config.g3);
  double bell = 0.0;
  for (int x = 0; x < 2; ++x) {
    for (int z = 0; z < 2; ++z) {
      bell += chsh_sign(x, z) *
              closed_form_correlator(in, config.thetas[static_cast<std::size_t>(x)] +
                                             config.varthetas[static_cast<std::size_t>(z)]);
    }
  }
  return bell;
}

inline constexpr double kClassicalBound = 2.0;

/// Strict: equality with the classical bound is not a violation.
inline bool violates_classical_bound(double bell) { return bell > kClassicalBound; }

/// Evenly spaced values start..stop inclusive; count 1 yields {start}.
struct LinearRange {
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 1;

  void validate(const char* name) const {
    if (count < 1) throw DomainError(std::string(name) + ": count must be >= 1");
    if (!std::isfinite(start) || !std::isfinite(stop) || start > stop) {
      throw DomainError(std::string(name) + ": need finite start <= stop");
    }
  }

  double at(std::size_t i) const {
    if (count == 1) return start;
    if (i + 1 == count) return stop;
    return start + (stop - start) * static_cast<double>(i) /
                       static_cast<double>(count - 1);
  }

  std::vector<double> values() const {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = at(i);
    return v;
  }
};

struct SweepGrid {
  LinearRange r1;
  LinearRange r2;
  double g3 = 8.0;
};

struct SweepRow {
  double r1 = 0.0;
  double r2 = 0.0;
  double g3 = 0.0;
  double bell_analytic = 0.0;
  double bell_engine = 0.0;
  bool violated = false;
};

/// One row per grid point, r1 outer. Rows are computed independently and
/// stored by index, so the table is identical for any thread count.
inline std::vector<SweepRow> sweep_bell(const SweepGrid& grid,
                                        unsigned threads = 1) {
  grid.r1.validate("r1");
  grid.r2.validate("r2");
  if (!(grid.r1.start > 0.0)) {
    throw NoDetectionError("no-detection: r1=0 gives vanishing rates");
  }
  const GainParam g3(grid.g3);
  const std::size_t n = grid.r1.count * grid.r2.count;
  std::vector<SweepRow> rows(n);
  parallel_for(n, threads, [&](std::size_t k) {
    const std::size_t i = k / grid.r2.count;
    const std::size_t j = k % grid.r2.count;
    BellConfig config{SqueezeParam(grid.r1.at(i)), SqueezeParam(grid.r2.at(j)),
                      g3};
    SweepRow& row = rows[k];
    row.r1 = config.r1.value();
    row.r2 = config.r2.value();
    row.g3 = g3.value();
    row.bell_analytic = bell_value(config, BellMethod::Analytic);
    row.bell_engine = bell_value(config, BellMethod::Engine);
    row.violated = violates_classical_bound(row.bell_analytic);
  });
  return rows;
}

}  // namespace cvnet
