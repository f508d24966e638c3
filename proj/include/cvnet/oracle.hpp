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

// Monte Carlo oracle. Seed quadratures are drawn as independent classical
// Gaussians of variance 1/4 and every linear form is evaluated sample by
// sample; moments and photon-pair rates are plain sample averages of the
// raw products, with no Gaussian moment factorization.
//
// Samples are split into fixed-size chunks, each with its own generator
// seeded from (rng_seed, chunk index). Chunk sums are merged in chunk order,
// so the estimates are bit-identical for any number of worker threads.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "cvnet/bell.hpp"
#include "cvnet/chain.hpp"
#include "cvnet/errors.hpp"
#include "cvnet/parallel.hpp"
#include "cvnet/quad.hpp"

namespace cvnet {

struct SampleConfig {
  std::size_t n_samples = 1'000'000;
  std::uint64_t rng_seed = 0;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct MomentEstimate {
  double mean = 0.0;
  double std_error = 0.0;

  /// |value - mean| in units of std_error.
  double z_score(double value) const {
    if (std_error == 0.0) return value == mean ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(value - mean) / std_error;
  }
};

namespace mc {

inline constexpr std::size_t kChunkSize = std::size_t{1} << 14;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t chunk_seed(std::uint64_t rng_seed, std::size_t chunk) {
  return splitmix64(rng_seed ^ splitmix64(static_cast<std::uint64_t>(chunk)));
}

/// Running sums of a vector statistic, optionally with the full cross matrix.
class Accumulator {
 public:
  Accumulator(std::size_t dim, bool cross)
      : dim_(dim), cross_(cross), sum_(dim, 0.0), sq_(cross ? dim * dim : dim, 0.0) {}

  void add(std::span<const double> v) {
    ++count_;
    for (std::size_t i = 0; i < dim_; ++i) sum_[i] += v[i];
    if (cross_) {
      for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) sq_[i * dim_ + j] += v[i] * v[j];
      }
    } else {
      for (std::size_t i = 0; i < dim_; ++i) sq_[i] += v[i] * v[i];
    }
  }

  void merge(const Accumulator& other) {
    count_ += other.count_;
    for (std::size_t i = 0; i < sum_.size(); ++i) sum_[i] += other.sum_[i];
    for (std::size_t i = 0; i < sq_.size(); ++i) sq_[i] += other.sq_[i];
  }

  std::size_t count() const { return count_; }
  double mean(std::size_t i) const { return sum_[i] / static_cast<double>(count_); }

  /// Unbiased sample covariance of components i and j.
  double covariance(std::size_t i, std::size_t j) const {
    const double n = static_cast<double>(count_);
    if (count_ < 2) return 0.0;
    const double sij = cross_ ? sq_[i * dim_ + j] : (i == j ? sq_[i] : 0.0);
    return (sij - n * mean(i) * mean(j)) / (n - 1.0);
  }

  MomentEstimate estimate(std::size_t i) const {
    const double var = std::max(0.0, covariance(i, i));
    return {mean(i), std::sqrt(var / static_cast<double>(count_))};
  }

  /// Standard error of the linear statistic g . v.
  double linear_std_error(std::span<const double> g) const {
    double var = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) var += g[i] * g[j] * covariance(i, j);
    }
    return std::sqrt(std::max(0.0, var) / static_cast<double>(count_));
  }

 private:
  std::size_t dim_;
  bool cross_;
  std::vector<double> sum_;
  std::vector<double> sq_;
  std::size_t count_ = 0;
};

/// Draws cfg.n_samples seed vectors (x and p, `seeds` entries each) and feeds
/// observe(xs, ps, stats) into an accumulator of dimension `dim`.
template <typename Observer>
Accumulator sample_statistics(std::size_t seeds, std::size_t dim, bool cross,
                              const SampleConfig& cfg, Observer&& observe) {
  if (cfg.n_samples == 0) throw DomainError("oracle: n_samples must be >= 1");
  const std::size_t chunks = (cfg.n_samples + kChunkSize - 1) / kChunkSize;
  std::vector<Accumulator> parts(chunks, Accumulator(dim, cross));
  parallel_for(chunks, cfg.threads, [&](std::size_t k) {
    std::mt19937_64 rng(chunk_seed(cfg.rng_seed, k));
    std::normal_distribution<double> normal(0.0, std::sqrt(kVacuumVariance));
    std::vector<double> xs(seeds), ps(seeds), stats(dim);
    const std::size_t begin = k * kChunkSize;
    const std::size_t end = std::min(cfg.n_samples, begin + kChunkSize);
    for (std::size_t s = begin; s < end; ++s) {
      for (std::size_t i = 0; i < seeds; ++i) {
        xs[i] = normal(rng);
        ps[i] = normal(rng);
      }
      observe(std::span<const double>(xs), std::span<const double>(ps),
              std::span<double>(stats));
      parts[k].add(stats);
    }
  });
  Accumulator total(dim, cross);
  for (const auto& p : parts) total.merge(p);
  return total;
}

inline double evaluate(const QuadratureForm& f, std::span<const double> xs,
                       std::span<const double> ps) {
  const auto c = f.coefficients();
  const auto v = f.sector() == Sector::X ? xs : ps;
  double acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) acc += c[i] * v[i];
  return acc;
}

}  // namespace mc

using FormPair = std::pair<QuadratureForm, QuadratureForm>;

/// Empirical <f g> for every pair, with standard errors.
inline std::vector<MomentEstimate> sample_moments(std::span<const FormPair> pairs,
                                                  const SampleConfig& cfg) {
  if (cfg.n_samples == 0) throw DomainError("oracle: n_samples must be >= 1");
  std::vector<QuadratureForm> forms;
  for (const auto& [f, g] : pairs) {
    if (f.registry() != g.registry() || f.registry() != pairs[0].first.registry()) {
      throw UsageError("sample_moments: forms belong to different registries");
    }
    forms.push_back(f);
    forms.push_back(g);
  }
  const std::size_t seeds = seed_span(forms);
  const mc::Accumulator acc = mc::sample_statistics(
      seeds, pairs.size(), false, cfg,
      [&](std::span<const double> xs, std::span<const double> ps, std::span<double> out) {
        for (std::size_t i = 0; i < pairs.size(); ++i) {
          out[i] = mc::evaluate(pairs[i].first, xs, ps) *
                   mc::evaluate(pairs[i].second, xs, ps);
        }
      });
  std::vector<MomentEstimate> est(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) est[i] = acc.estimate(i);
  return est;
}

struct RateCheck {
  int x = 0;
  int z = 0;
  Outcome a = Outcome::Plus;
  Outcome c = Outcome::Plus;
  double analytic = 0.0;
  MomentEstimate estimate;
};

struct WickReport {
  std::vector<RateCheck> rates;  // 16 entries, ordered x, z, a, c
  std::array<std::array<MomentEstimate, 2>, 2> correlators{};
  MomentEstimate bell;
  double bell_analytic = 0.0;

  double max_z_score() const {
    double worst = bell.z_score(bell_analytic);
    for (const auto& r : rates) worst = std::max(worst, r.estimate.z_score(r.analytic));
    return worst;
  }
  bool within(double sigmas) const { return max_z_score() <= sigmas; }
};

/// Estimates every R^{a,c}(x,z) as the sample mean of
/// (x_a^2 + p_a^2 - 1/2)(x_c^2 + p_c^2 - 1/2) and assembles the conditional
/// correlators and the Bell value from the sampled rates (delta-method errors).
inline WickReport validate_wick(const BellNetwork& net, const SampleConfig& cfg) {
  require_detection(net.config);
  std::array<MeasuredModes, 4> settings{net.measure(0, 0), net.measure(0, 1),
                                        net.measure(1, 0), net.measure(1, 1)};
  std::vector<QuadratureForm> forms;
  for (const auto& m : settings) {
    for (const OpticalMode* mode : {&m.a_plus, &m.a_minus, &m.c_plus, &m.c_minus}) {
      forms.push_back(mode->x);
      forms.push_back(mode->p);
    }
  }
  const std::size_t seeds = seed_span(forms);
  const auto number = [](const OpticalMode& m, std::span<const double> xs,
                         std::span<const double> ps) {
    const double x = mc::evaluate(m.x, xs, ps);
    const double p = mc::evaluate(m.p, xs, ps);
    return x * x + p * p - 2.0 * kVacuumVariance;
  };
  const mc::Accumulator acc = mc::sample_statistics(
      seeds, 16, true, cfg,
      [&](std::span<const double> xs, std::span<const double> ps, std::span<double> out) {
        for (std::size_t s = 0; s < 4; ++s) {
          const MeasuredModes& m = settings[s];
          const double ap = number(m.a_plus, xs, ps);
          const double am = number(m.a_minus, xs, ps);
          const double cp = number(m.c_plus, xs, ps);
          const double cm = number(m.c_minus, xs, ps);
          out[4 * s + 0] = ap * cp;
          out[4 * s + 1] = ap * cm;
          out[4 * s + 2] = am * cp;
          out[4 * s + 3] = am * cm;
        }
      });

  WickReport rep;
  std::array<double, 16> bell_gradient{};
  for (int x = 0; x < 2; ++x) {
    for (int z = 0; z < 2; ++z) {
      const std::size_t s = static_cast<std::size_t>(2 * x + z);
      const RateBlock analytic = rate_block(net, x, z);
      for (int a = 0; a < 2; ++a) {
        for (int c = 0; c < 2; ++c) {
          const std::size_t i = 4 * s + static_cast<std::size_t>(2 * a + c);
          rep.rates.push_back({x, z, static_cast<Outcome>(a), static_cast<Outcome>(c),
                               analytic[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)],
                               acc.estimate(i)});
        }
      }
      // E = u / w with u = R++ - R+- - R-+ + R--, w = sum of the four.
      const std::array<double, 4> sgn{1.0, -1.0, -1.0, 1.0};
      double u = 0.0, w = 0.0;
      for (std::size_t k = 0; k < 4; ++k) {
        u += sgn[k] * acc.mean(4 * s + k);
        w += acc.mean(4 * s + k);
      }
      const double e = u / w;
      std::array<double, 16> g{};
      for (std::size_t k = 0; k < 4; ++k) {
        g[4 * s + k] = (sgn[k] - e) / w;
        bell_gradient[4 * s + k] = chsh_sign(x, z) * g[4 * s + k];
      }
      rep.correlators[static_cast<std::size_t>(x)][static_cast<std::size_t>(z)] = {
          e, acc.linear_std_error(g)};
      rep.bell.mean += chsh_sign(x, z) * e;
    }
  }
  rep.bell.std_error = acc.linear_std_error(bell_gradient);
  rep.bell_analytic = correlator_table(net).bell;
  return rep;
}

}  // namespace cvnet
