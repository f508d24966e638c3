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

// The all-optical entanglement-swapping chain and the two-chain Bell network.

#include <array>
#include <numbers>
#include <string>

#include "cvnet/elements.hpp"
#include "cvnet/errors.hpp"
#include "cvnet/quad.hpp"

namespace cvnet {

struct ChainModes {
  OpticalMode a1;
  OpticalMode a2;
  OpticalMode a3;
  OpticalMode a4;
  OpticalMode a2_amp;  // amplified a2 sent to the far node
  OpticalMode a4_out;  // a4 after coupling with a2_amp at transmission 1/G3
};

/// Two squeezers (r1 on the Alice/Bob pair, r2 on the Bob/Charlie pair), an
/// amplifier with gain G3 on (a2, a3) and a 1/G3 beam splitter on
/// (a2_amp, a4). The finite-r2 residual on a4_out is kept exactly.
inline ChainModes build_aoes_chain(SeedRegistry& registry, SqueezeParam r1,
                                   SqueezeParam r2, GainParam g3) {
  if (!(g3.value() > 1.0)) {
    throw DomainError("entanglement swapping needs G3 > 1");
  }
  auto [a1, a2] = two_mode_squeeze(registry, r1);
  auto [a3, a4] = two_mode_squeeze(registry, r2);
  OpticalMode a2_amp = parametric_amplify(a2, a3, g3);
  OpticalMode a4_out = beam_split(a2_amp, a4, 1.0 / g3.value());
  return {std::move(a1), std::move(a2), std::move(a3),
          std::move(a4), std::move(a2_amp), std::move(a4_out)};
}

struct BellConfig {
  SqueezeParam r1{0.1};
  SqueezeParam r2{2.0};
  GainParam g3{8.0};
  std::array<double, 2> thetas{3.0 * std::numbers::pi / 8.0,
                               std::numbers::pi / 8.0};
  std::array<double, 2> varthetas{std::numbers::pi / 4.0, 0.0};
};

/// The four homodyne-measured modes for one (x, z) setting pair.
struct MeasuredModes {
  OpticalMode a_plus;
  OpticalMode a_minus;
  OpticalMode c_plus;
  OpticalMode c_minus;
};

/// Two independent chains on disjoint seeds. Alice holds (b1 horizontal,
/// a1 vertical); Charlie holds (a4_out horizontal, b4_out vertical).
struct BellNetwork {
  ChainModes a_chain;
  ChainModes b_chain;
  BellConfig config;

  MeasuredModes measure(int x, int z) const {
    if ((x != 0 && x != 1) || (z != 0 && z != 1)) {
      throw UsageError("measurement settings must be 0 or 1");
    }
    auto [ap, am] = polarization_combine(b_chain.a1, a_chain.a1,
                                         config.thetas[static_cast<std::size_t>(x)]);
    auto [cp, cm] = polarization_combine(
        a_chain.a4_out, b_chain.a4_out,
        config.varthetas[static_cast<std::size_t>(z)]);
    return {std::move(ap), std::move(am), std::move(cp), std::move(cm)};
  }
};

inline BellNetwork build_bell_network(SeedRegistry& registry,
                                      const BellConfig& config) {
  ChainModes a = build_aoes_chain(registry, config.r1, config.r2, config.g3);
  ChainModes b = build_aoes_chain(registry, config.r1, config.r2, config.g3);
  return {std::move(a), std::move(b), config};
}

}  // namespace cvnet
