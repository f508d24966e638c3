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

// Gaussian quadrature algebra over independent vacuum seeds.
//
// Every seed quadrature is zero-mean with variance 1/4 and all seeds are
// mutually uncorrelated, so a second moment of two linear forms reduces to
// 1/4 times the inner product of their coefficient vectors. The x and p
// sectors share seed indices but never mix: every element in this library
// maps x-forms to x-forms and p-forms to p-forms, so cross-sector moments
// vanish identically.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cvnet/errors.hpp"

namespace cvnet {

inline constexpr double kVacuumVariance = 0.25;

enum class Sector { X, P };

inline const char* to_string(Sector s) { return s == Sector::X ? "x" : "p"; }

struct SeedId {
  std::size_t index = 0;
  friend bool operator==(SeedId, SeedId) = default;
};

/// Hands out fresh seed indices. Each registry carries a process-unique id so
/// forms built on different registries are never silently combined.
class SeedRegistry {
 public:
  SeedRegistry() : id_(next_id()) {}
  SeedRegistry(const SeedRegistry&) = delete;
  SeedRegistry& operator=(const SeedRegistry&) = delete;

  SeedId allocate() { return SeedId{count_++}; }

  std::size_t count() const { return count_; }
  std::uint64_t id() const { return id_; }

 private:
  static std::uint64_t next_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
  }

  std::uint64_t id_;
  std::size_t count_ = 0;
};

/// Linear form over the seed quadratures of one sector. Coefficients beyond
/// the stored length are zero.
class QuadratureForm {
 public:
  QuadratureForm(std::uint64_t registry, Sector sector)
      : registry_(registry), sector_(sector) {}

  static QuadratureForm unit(const SeedRegistry& registry, Sector sector,
                             SeedId seed) {
    QuadratureForm f(registry.id(), sector);
    f.coeffs_.assign(seed.index + 1, 0.0);
    f.coeffs_[seed.index] = 1.0;
    return f;
  }

  std::uint64_t registry() const { return registry_; }
  Sector sector() const { return sector_; }
  std::span<const double> coefficients() const { return coeffs_; }

  double coeff(SeedId seed) const {
    return seed.index < coeffs_.size() ? coeffs_[seed.index] : 0.0;
  }

  QuadratureForm& operator+=(const QuadratureForm& other) {
    check_compatible(other);
    if (other.coeffs_.size() > coeffs_.size()) {
      coeffs_.resize(other.coeffs_.size(), 0.0);
    }
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) {
      coeffs_[i] += other.coeffs_[i];
    }
    return *this;
  }

  QuadratureForm& operator-=(const QuadratureForm& other) {
    return *this += -1.0 * other;
  }

  QuadratureForm& operator*=(double scale) {
    for (double& c : coeffs_) c *= scale;
    return *this;
  }

  friend QuadratureForm operator+(QuadratureForm a, const QuadratureForm& b) {
    return a += b;
  }
  friend QuadratureForm operator-(QuadratureForm a, const QuadratureForm& b) {
    return a -= b;
  }
  friend QuadratureForm operator*(double s, QuadratureForm f) { return f *= s; }
  friend QuadratureForm operator*(QuadratureForm f, double s) { return f *= s; }
  friend QuadratureForm operator-(QuadratureForm f) { return f *= -1.0; }

  bool all_finite() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](double c) { return std::isfinite(c); });
  }

 private:
  void check_compatible(const QuadratureForm& other) const {
    if (other.registry_ != registry_) {
      throw UsageError("quadrature forms belong to different seed registries");
    }
    if (other.sector_ != sector_) {
      throw UsageError("cannot add an x-sector form to a p-sector form");
    }
  }

  std::uint64_t registry_;
  Sector sector_;
  std::vector<double> coeffs_;
};

/// Symmetrized second moment <f g>. Zero across sectors.
inline double second_moment(const QuadratureForm& f, const QuadratureForm& g) {
  if (f.registry() != g.registry()) {
    throw UsageError("second_moment: forms belong to different seed registries");
  }
  if (f.sector() != g.sector()) return 0.0;
  const auto a = f.coefficients();
  const auto b = g.coefficients();
  const std::size_t n = std::min(a.size(), b.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return kVacuumVariance * acc;
}

/// One beam: paired x and p forms on the same registry.
struct OpticalMode {
  QuadratureForm x;
  QuadratureForm p;

  std::uint64_t registry() const { return x.registry(); }

  friend OpticalMode operator+(const OpticalMode& a, const OpticalMode& b) {
    return {a.x + b.x, a.p + b.p};
  }
  friend OpticalMode operator-(const OpticalMode& a, const OpticalMode& b) {
    return {a.x - b.x, a.p - b.p};
  }
  friend OpticalMode operator*(double s, const OpticalMode& m) {
    return {s * m.x, s * m.p};
  }
};

/// Allocates one fresh vacuum seed and returns the bare vacuum mode on it.
inline OpticalMode vacuum_mode(SeedRegistry& registry) {
  const SeedId seed = registry.allocate();
  return {QuadratureForm::unit(registry, Sector::X, seed),
          QuadratureForm::unit(registry, Sector::P, seed)};
}

/// Canonical-commutation audit: [x, p] = (i/2) * commutator_norm(m).
inline double commutator_norm(const OpticalMode& m) {
  const auto a = m.x.coefficients();
  const auto b = m.p.coefficients();
  const std::size_t n = std::min(a.size(), b.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

/// Largest seed index referenced by any of the forms, plus one.
inline std::size_t seed_span(std::span<const QuadratureForm> forms) {
  std::size_t n = 0;
  for (const auto& f : forms) n = std::max(n, f.coefficients().size());
  return n;
}

}  // namespace cvnet
