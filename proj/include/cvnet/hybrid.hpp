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

// Classical bound of the conditional Bell value over hybrid networks: one
// source distributes a classical variable lambda, the other an arbitrary
// no-signaling box, and Bob's outcome b is announced.
//
// The objective is linear in the lambda mixture and every conditional
// correlator is a convex combination over lambda, so lambda reduces to the
// four deterministic strategies of the party fed only by the classical source.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "cvnet/bell.hpp"
#include "cvnet/errors.hpp"
#include "cvnet/lp.hpp"

namespace cvnet {

enum class ClassicalLink { AliceBob, BobCharlie };

struct HybridScenario {
  ClassicalLink classical = ClassicalLink::AliceBob;
  std::size_t b_alphabet = 2;
};

/// Deterministic +-1 answer per input of the classically fed party.
struct DeterministicStrategy {
  std::array<int, 2> outputs{1, 1};
};

inline std::array<DeterministicStrategy, 4> deterministic_strategies() {
  return {{{{1, 1}}, {{1, -1}}, {{-1, 1}}, {{-1, -1}}}};
}

inline constexpr double kNoSignalingTolerance = 1e-12;

/// Joint box p(b, c | k) shared by Bob and one other party with input k.
/// c = +1 is stored at index 0, c = -1 at index 1.
class NSBehavior {
 public:
  NSBehavior(std::size_t b_alphabet, std::vector<double> probs)
      : b_alphabet_(b_alphabet), probs_(std::move(probs)) {
    if (b_alphabet_ < 1) throw ValidationError("b alphabet must be >= 1");
    if (probs_.size() != 4 * b_alphabet_) {
      throw ValidationError("NS behavior needs 4*B probabilities");
    }
  }

  static std::size_t index(std::size_t b, int c, int k) {
    return (b * 2 + (c > 0 ? 0 : 1)) * 2 + static_cast<std::size_t>(k);
  }

  std::size_t b_alphabet() const { return b_alphabet_; }
  const std::vector<double>& probs() const { return probs_; }

  double prob(std::size_t b, int c, int k) const { return probs_.at(index(b, c, k)); }

  double marginal(std::size_t b, int k) const { return prob(b, 1, k) + prob(b, -1, k); }

  /// <C_k | b>; requires marginal(b, k) > 0.
  double conditional_expectation(std::size_t b, int k) const {
    const double m = marginal(b, k);
    if (!(m > 0.0)) throw UsageError("conditioning on an outcome of zero probability");
    return (prob(b, 1, k) - prob(b, -1, k)) / m;
  }

  /// Unconditioned <C_k>.
  double expectation(int k) const {
    double e = 0.0;
    for (std::size_t b = 0; b < b_alphabet_; ++b) e += prob(b, 1, k) - prob(b, -1, k);
    return e;
  }

  void validate() const {
    for (double p : probs_) {
      if (!std::isfinite(p) || p < 0.0) throw ValidationError("negative or non-finite probability");
    }
    for (int k = 0; k < 2; ++k) {
      double total = 0.0;
      for (std::size_t b = 0; b < b_alphabet_; ++b) total += marginal(b, k);
      if (std::abs(total - 1.0) > kNoSignalingTolerance) {
        throw ValidationError("NS behavior is not normalized for input " + std::to_string(k));
      }
    }
    for (std::size_t b = 0; b < b_alphabet_; ++b) {
      if (std::abs(marginal(b, 0) - marginal(b, 1)) > kNoSignalingTolerance) {
        throw ValidationError("NS behavior signals: p(b=" + std::to_string(b) +
                              ") depends on the remote input");
      }
    }
  }

 private:
  std::size_t b_alphabet_;
  std::vector<double> probs_;
};

struct HybridOptimum {
  double value = -std::numeric_limits<double>::infinity();
  DeterministicStrategy strategy;
  std::size_t b = 0;
  std::vector<double> witness;  // maximizing NS behavior, NSBehavior layout
};

namespace detail {

/// Weight of <K_k | b> in the Bell sum once the classical party plays s.
inline std::array<double, 2> box_weights(ClassicalLink link,
                                         const DeterministicStrategy& s) {
  std::array<double, 2> w{};
  for (int k = 0; k < 2; ++k) {
    for (int j = 0; j < 2; ++j) {
      // AliceBob: the box party is Charlie (k = z), Alice plays j = x.
      // BobCharlie: the box party is Alice (k = x), Charlie plays j = z.
      const int sgn = link == ClassicalLink::AliceBob ? chsh_sign(j, k) : chsh_sign(k, j);
      w[static_cast<std::size_t>(k)] += sgn * s.outputs[static_cast<std::size_t>(j)];
    }
  }
  return w;
}

/// Charnes-Cooper form of  max sum_k w_k <K_k | b*>  over the NS polytope:
/// variables y = p / p(b*) and t = 1 / p(b*).
inline lp::Result conditional_lp(std::size_t alphabet, std::size_t b_star,
                                 const std::array<double, 2>& w) {
  const std::size_t nv = 4 * alphabet + 1;
  const std::size_t t = nv - 1;
  lp::Problem p;
  p.c.assign(nv, 0.0);
  for (int k = 0; k < 2; ++k) {
    p.c[NSBehavior::index(b_star, 1, k)] = w[static_cast<std::size_t>(k)];
    p.c[NSBehavior::index(b_star, -1, k)] = -w[static_cast<std::size_t>(k)];
  }
  for (int k = 0; k < 2; ++k) {
    std::vector<double> row(nv, 0.0);
    for (std::size_t b = 0; b < alphabet; ++b) {
      row[NSBehavior::index(b, 1, k)] = 1.0;
      row[NSBehavior::index(b, -1, k)] = 1.0;
    }
    row[t] = -1.0;
    p.a.push_back(std::move(row));
    p.b.push_back(0.0);
  }
  for (std::size_t b = 0; b < alphabet; ++b) {
    std::vector<double> row(nv, 0.0);
    for (int c : {1, -1}) {
      row[NSBehavior::index(b, c, 0)] = 1.0;
      row[NSBehavior::index(b, c, 1)] = -1.0;
    }
    p.a.push_back(std::move(row));
    p.b.push_back(0.0);
  }
  std::vector<double> norm(nv, 0.0);
  norm[NSBehavior::index(b_star, 1, 0)] = 1.0;
  norm[NSBehavior::index(b_star, -1, 0)] = 1.0;
  p.a.push_back(std::move(norm));
  p.b.push_back(1.0);
  return lp::maximize(p);
}

}  // namespace detail

/// Maximum of the conditional Bell value over deterministic strategies, every
/// announced b and the full no-signaling polytope, by linear programming.
inline HybridOptimum max_bell_hybrid(const HybridScenario& scenario) {
  if (scenario.b_alphabet < 1) throw ValidationError("b alphabet must be >= 1");
  HybridOptimum best;
  for (const auto& s : deterministic_strategies()) {
    const auto w = detail::box_weights(scenario.classical, s);
    for (std::size_t b = 0; b < scenario.b_alphabet; ++b) {
      const lp::Result r = detail::conditional_lp(scenario.b_alphabet, b, w);
      if (r.status != lp::Status::Optimal) {
        throw std::logic_error("hybrid bound: conditional LP not optimal");
      }
      if (r.value > best.value) {
        best.value = r.value;
        best.strategy = s;
        best.b = b;
        const double t = r.x.back();
        best.witness.assign(r.x.begin(), r.x.end() - 1);
        for (double& v : best.witness) v /= t;
      }
    }
  }
  return best;
}

/// Reference route: given b with positive probability, the conditional
/// responses P(k-party | k, b) range over a product of two segments whose
/// vertices are the deterministic maps k -> +-1. Enumerate those against the
/// four classical strategies.
inline double max_bell_hybrid_vertices(const HybridScenario& scenario) {
  if (scenario.b_alphabet < 1) throw ValidationError("b alphabet must be >= 1");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& s : deterministic_strategies()) {
    const auto w = detail::box_weights(scenario.classical, s);
    for (const auto& g : deterministic_strategies()) {
      best = std::max(best, w[0] * g.outputs[0] + w[1] * g.outputs[1]);
    }
  }
  return best;
}

/// One hybrid model: lambda feeds Alice, the box feeds Bob and Charlie.
struct HybridModel {
  std::vector<double> lambda;                      // mu(lambda)
  std::vector<std::array<double, 2>> alice_plus;   // p(a=+1 | x, lambda)
  NSBehavior box;
};

struct IndependenceReport {
  std::array<std::array<double, 2>, 2> joint{};    // <A_x C_z>
  std::array<std::array<double, 2>, 2> product{};  // <A_x><C_z>
  double max_deviation = 0.0;
};

inline IndependenceReport independence_check(const HybridModel& model) {
  if (model.lambda.empty() || model.lambda.size() != model.alice_plus.size()) {
    throw ValidationError("lambda distribution and Alice responses disagree in size");
  }
  double mass = 0.0;
  for (double p : model.lambda) {
    if (!std::isfinite(p) || p < 0.0) throw ValidationError("negative lambda weight");
    mass += p;
  }
  if (std::abs(mass - 1.0) > kNoSignalingTolerance) {
    throw ValidationError("lambda distribution is not normalized");
  }
  for (const auto& r : model.alice_plus) {
    for (double p : r) {
      if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("Alice response outside [0,1]");
    }
  }
  model.box.validate();

  IndependenceReport rep;
  std::array<double, 2> mean_a{};
  for (int x = 0; x < 2; ++x) {
    for (std::size_t l = 0; l < model.lambda.size(); ++l) {
      const double pp = model.alice_plus[l][static_cast<std::size_t>(x)];
      mean_a[static_cast<std::size_t>(x)] += model.lambda[l] * (pp - (1.0 - pp));
    }
  }
  for (int x = 0; x < 2; ++x) {
    for (int z = 0; z < 2; ++z) {
      double joint = 0.0;
      for (std::size_t l = 0; l < model.lambda.size(); ++l) {
        for (int a : {1, -1}) {
          const double pp = model.alice_plus[l][static_cast<std::size_t>(x)];
          const double pa = a > 0 ? pp : 1.0 - pp;
          for (std::size_t b = 0; b < model.box.b_alphabet(); ++b) {
            for (int c : {1, -1}) {
              joint += a * c * model.lambda[l] * pa * model.box.prob(b, c, z);
            }
          }
        }
      }
      const auto xi = static_cast<std::size_t>(x);
      const auto zi = static_cast<std::size_t>(z);
      rep.joint[xi][zi] = joint;
      rep.product[xi][zi] = mean_a[xi] * model.box.expectation(z);
      rep.max_deviation = std::max(rep.max_deviation, std::abs(joint - rep.product[xi][zi]));
    }
  }
  return rep;
}

}  // namespace cvnet
