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

// Closed-form second-moment tables of the two-chain network, written out
// entry by entry from the source formulas and compared to engine moments.
// Shared by the unit and acceptance suites.

#include <cmath>
#include <string>
#include <vector>

#include "cvnet/chain.hpp"

namespace cvnet::test_support {

struct MomentEntry {
  std::string label;
  double engine;
  double closed_form;
};

inline std::vector<MomentEntry> moment_tables(double r1, double r2, double g3, double theta,
                                              double vartheta) {
  BellConfig cfg;
  cfg.r1 = SqueezeParam(r1);
  cfg.r2 = SqueezeParam(r2);
  cfg.g3 = GainParam(g3);
  cfg.thetas = {theta, theta};
  cfg.varthetas = {vartheta, vartheta};
  SeedRegistry reg;
  const BellNetwork net = build_bell_network(reg, cfg);
  const OpticalMode& a1 = net.a_chain.a1;
  const OpticalMode& a4 = net.a_chain.a4_out;
  const OpticalMode& b1 = net.b_chain.a1;
  const OpticalMode& b4 = net.b_chain.a4_out;

  const double ch = std::cosh(2 * r1), sh = std::sinh(2 * r1);
  const double v1 = 0.25 * ch;
  const double v4 = 0.25 * (ch + (g3 - 1) / g3 * 2 * std::exp(-2 * r2));
  const double cc = 0.25 * sh;
  const double gamma1 = ch - 1;
  const double gamma2 = ch + (2 * g3 - 2) / g3 * std::exp(-2 * r2) - 1;
  const double sn = std::sin(theta + vartheta), cs = std::cos(theta + vartheta);

  std::vector<MomentEntry> t;
  const auto add = [&](std::string label, const QuadratureForm& f, const QuadratureForm& g,
                       double expected) {
    t.push_back({std::move(label), second_moment(f, g), expected});
  };

  // Chain outputs.
  add("<x_a1^2>", a1.x, a1.x, v1);
  add("<p_a1^2>", a1.p, a1.p, v1);
  add("<x_b1^2>", b1.x, b1.x, v1);
  add("<p_b1^2>", b1.p, b1.p, v1);
  add("<x_a4'^2>", a4.x, a4.x, v4);
  add("<p_a4'^2>", a4.p, a4.p, v4);
  add("<x_b4'^2>", b4.x, b4.x, v4);
  add("<p_b4'^2>", b4.p, b4.p, v4);
  add("<x_a1 x_a4'>", a1.x, a4.x, cc);
  add("<p_a1 p_a4'>", a1.p, a4.p, -cc);
  add("<x_b1 x_b4'>", b1.x, b4.x, cc);
  add("<p_b1 p_b4'>", b1.p, b4.p, -cc);
  add("<x_a1 x_b1>", a1.x, b1.x, 0);
  add("<x_a4' x_b4'>", a4.x, b4.x, 0);
  add("<p_a1 p_b1>", a1.p, b1.p, 0);
  add("<p_a4' p_b4'>", a4.p, b4.p, 0);
  add("<x_b1 x_a4'>", b1.x, a4.x, 0);
  add("<x_a1 x_b4'>", a1.x, b4.x, 0);
  add("<p_b1 p_a4'>", b1.p, a4.p, 0);
  add("<p_a1 p_b4'>", a1.p, b4.p, 0);
  add("<p_a1 x_a4'>", a1.p, a4.x, 0);
  add("<p_a1 x_b4'>", a1.p, b4.x, 0);
  add("<p_b1 x_a4'>", b1.p, a4.x, 0);
  add("<p_b1 x_b4'>", b1.p, b4.x, 0);
  add("<x_b1 p_b4'>", b1.x, b4.p, 0);
  add("<x_a1 p_b4'>", a1.x, b4.p, 0);
  add("<x_b1 p_a4'>", b1.x, a4.p, 0);
  add("<x_a1 p_a4'>", a1.x, a4.p, 0);

  // Measured modes for the four outcome pairs.
  const MeasuredModes m = net.measure(0, 0);
  struct Pair {
    const char* name;
    const OpticalMode& a;
    const OpticalMode& c;
    double xx;
  };
  const Pair pairs[] = {{"++", m.a_plus, m.c_plus, cc * sn},
                        {"--", m.a_minus, m.c_minus, -cc * sn},
                        {"+-", m.a_plus, m.c_minus, cc * cs},
                        {"-+", m.a_minus, m.c_plus, cc * cs}};
  for (const auto& p : pairs) {
    const std::string s = p.name;
    add("[" + s + "] <x_a p_c>", p.a.x, p.c.p, 0);
    add("[" + s + "] <p_a x_c>", p.a.p, p.c.x, 0);
    add("[" + s + "] <x_a x_c>", p.a.x, p.c.x, p.xx);
    add("[" + s + "] <p_a p_c>", p.a.p, p.c.p, -p.xx);
    add("[" + s + "] <x_a^2>", p.a.x, p.a.x, 0.25 * (gamma1 + 1));
    add("[" + s + "] <p_a^2>", p.a.p, p.a.p, 0.25 * (gamma1 + 1));
    add("[" + s + "] <x_c^2>", p.c.x, p.c.x, 0.25 * (gamma2 + 1));
    add("[" + s + "] <p_c^2>", p.c.p, p.c.p, 0.25 * (gamma2 + 1));
  }
  return t;
}

}  // namespace cvnet::test_support
