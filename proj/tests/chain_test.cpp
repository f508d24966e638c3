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

#include "cvnet/chain.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

using namespace cvnet;

namespace {

bool disjoint(const QuadratureForm& a, const QuadratureForm& b) {
  const std::size_t n = std::max(a.coefficients().size(), b.coefficients().size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeff(SeedId{i}) != 0.0 && b.coeff(SeedId{i}) != 0.0) return false;
  }
  return true;
}

}  // namespace

TEST(chain, rejects_unit_gain) {
  SeedRegistry reg;
  EXPECT_THROW(build_aoes_chain(reg, SqueezeParam(0.5), SqueezeParam(1.0), GainParam(1.0)),
               DomainError);
}

TEST(chain, swapped_correlation_is_exact) {
  for (double r2 : {0.0, 0.5, 2.0, 4.0}) {
    for (double g : {1.5, 8.0, 100.0}) {
      SeedRegistry reg;
      const ChainModes c = build_aoes_chain(reg, SqueezeParam(0.5), SqueezeParam(r2), GainParam(g));
      EXPECT_NEAR(second_moment(c.a1.x, c.a4_out.x), 0.25 * std::sinh(1.0), 1e-14);
      EXPECT_NEAR(second_moment(c.a1.p, c.a4_out.p), -0.25 * std::sinh(1.0), 1e-14);
      EXPECT_EQ(second_moment(c.a1.x, c.a4_out.p), 0.0);
    }
  }
  SeedRegistry reg;
  const ChainModes c = build_aoes_chain(reg, SqueezeParam(0.5), SqueezeParam(2.0), GainParam(8.0));
  EXPECT_NEAR(second_moment(c.a1.x, c.a4_out.x), 0.293800, 1e-6);
}

TEST(chain, swapped_mode_variance) {
  SeedRegistry reg;
  const ChainModes c = build_aoes_chain(reg, SqueezeParam(0.5), SqueezeParam(2.0), GainParam(8.0));
  const double expected = 0.25 * (std::cosh(1.0) + 7.0 / 8.0 * 2.0 * std::exp(-4.0));
  EXPECT_NEAR(second_moment(c.a4_out.x, c.a4_out.x), expected, 1e-14);
  EXPECT_NEAR(second_moment(c.a4_out.p, c.a4_out.p), expected, 1e-14);
  EXPECT_NEAR(expected, 0.393783, 1e-6);
}

TEST(chain, residual_decays_as_exp_minus_r2) {
  // a4_out - a2 = sqrt((G-1)/G) * sqrt2 e^{-r2} on one seed per sector.
  for (double r2 : {0.0, 0.7, 2.0, 6.0}) {
    SeedRegistry reg;
    const double g = 8.0;
    const ChainModes c = build_aoes_chain(reg, SqueezeParam(0.5), SqueezeParam(r2), GainParam(g));
    const QuadratureForm rx = c.a4_out.x - c.a2.x;
    const QuadratureForm rp = c.a4_out.p - c.a2.p;
    const double amp = std::sqrt((g - 1.0) / g) * std::sqrt(2.0) * std::exp(-r2);
    // seeds: 0 a0, 1 v1, 2 v2, 3 v3. The cancelling terms are of size
    // cosh r2, hence the looser tolerance on the vanishing entries.
    EXPECT_NEAR(rx.coeff(SeedId{3}), amp, 1e-12);
    EXPECT_NEAR(rx.coeff(SeedId{2}), 0.0, 1e-12);
    EXPECT_NEAR(rp.coeff(SeedId{2}), -amp, 1e-12);
    EXPECT_NEAR(rp.coeff(SeedId{3}), 0.0, 1e-12);
    EXPECT_NEAR(rx.coeff(SeedId{0}), 0.0, 1e-14);
    EXPECT_NEAR(rx.coeff(SeedId{1}), 0.0, 1e-14);
  }
  EXPECT_NEAR(std::cosh(2.0) - std::sinh(2.0), 0.135335, 1e-6);
}

TEST(chain, all_modes_are_canonical) {
  SeedRegistry reg;
  const ChainModes c = build_aoes_chain(reg, SqueezeParam(0.8), SqueezeParam(1.1), GainParam(5.0));
  for (const OpticalMode* m : {&c.a1, &c.a2, &c.a3, &c.a4, &c.a2_amp, &c.a4_out}) {
    EXPECT_NEAR(commutator_norm(*m), 1.0, 1e-12);
  }
}

TEST(chain, network_chains_use_disjoint_seeds) {
  SeedRegistry reg;
  const BellNetwork net = build_bell_network(reg, BellConfig{});
  EXPECT_EQ(reg.count(), 8u);
  const OpticalMode* a_side[] = {&net.a_chain.a1, &net.a_chain.a4_out};
  const OpticalMode* b_side[] = {&net.b_chain.a1, &net.b_chain.a4_out};
  for (const OpticalMode* a : a_side) {
    for (const OpticalMode* b : b_side) {
      EXPECT_TRUE(disjoint(a->x, b->x));
      EXPECT_TRUE(disjoint(a->p, b->p));
      EXPECT_EQ(second_moment(a->x, b->x), 0.0);
      EXPECT_EQ(second_moment(a->p, b->p), 0.0);
    }
  }
}

TEST(chain, measured_mode_moments) {
  BellConfig cfg;
  cfg.r1 = SqueezeParam(0.1);
  SeedRegistry reg;
  const BellNetwork net = build_bell_network(reg, cfg);
  const MeasuredModes m = net.measure(0, 0);
  const double sum = 3.0 * std::numbers::pi / 8.0 + std::numbers::pi / 4.0;
  EXPECT_NEAR(second_moment(m.a_plus.x, m.c_plus.x), 0.25 * std::sin(sum) * std::sinh(0.2), 1e-14);
  EXPECT_NEAR(second_moment(m.a_plus.x, m.c_plus.x), 0.046502, 1e-6);
  EXPECT_EQ(second_moment(m.a_plus.x, m.c_plus.p), 0.0);
  EXPECT_EQ(second_moment(m.a_plus.p, m.c_plus.x), 0.0);
  EXPECT_NEAR(second_moment(m.a_plus.x, m.a_plus.x), 0.25 * std::cosh(0.2), 1e-14);
  EXPECT_NEAR(second_moment(m.a_plus.x, m.a_plus.x), 0.255017, 1e-6);
}

TEST(chain, bad_setting_index) {
  SeedRegistry reg;
  const BellNetwork net = build_bell_network(reg, BellConfig{});
  EXPECT_THROW(net.measure(2, 0), UsageError);
  EXPECT_THROW(net.measure(0, -1), UsageError);
}
