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

// Dense two-phase simplex for small standard-form programs
//
//   maximize c.x  subject to  A x = b,  x >= 0
//
// using Bland's rule, so it terminates on degenerate vertices. Intended for
// the few-dozen-variable programs of the hybrid-bound certification.

#include <cmath>
#include <cstddef>
#include <vector>

#include "cvnet/errors.hpp"

namespace cvnet::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  double value = 0.0;
  std::vector<double> x;
};

struct Problem {
  std::vector<std::vector<double>> a;  // rows of A
  std::vector<double> b;
  std::vector<double> c;
};

namespace detail {

inline constexpr double kEps = 1e-11;

class Tableau {
 public:
  Tableau(const Problem& p)
      : rows_(p.a.size()), vars_(p.c.size()), cols_(vars_ + rows_) {
    t_.assign(rows_ + 1, std::vector<double>(cols_ + 1, 0.0));
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (p.a[i].size() != vars_) throw UsageError("lp: ragged constraint row");
      const double flip = p.b[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < vars_; ++j) t_[i][j] = flip * p.a[i][j];
      t_[i][vars_ + i] = 1.0;
      t_[i][cols_] = flip * p.b[i];
      basis_[i] = vars_ + i;
    }
  }

  Status solve(const std::vector<double>& c, Result& out) {
    // Phase 1: maximize -sum(artificials).
    auto& z = t_[rows_];
    std::fill(z.begin(), z.end(), 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (j < vars_ || j == cols_) z[j] -= t_[i][j];
      }
    }
    optimize(cols_);
    if (z[cols_] < -1e-9) return Status::Infeasible;
    drive_out_artificials();

    // Phase 2 over the structural columns only.
    std::fill(z.begin(), z.end(), 0.0);
    for (std::size_t j = 0; j < vars_; ++j) z[j] = -c[j];
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!active_[i]) continue;
      const std::size_t bj = basis_[i];
      const double cb = bj < vars_ ? c[bj] : 0.0;
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) z[j] += cb * t_[i][j];
    }
    if (!optimize(vars_)) return Status::Unbounded;

    out.x.assign(vars_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (active_[i] && basis_[i] < vars_) out.x[basis_[i]] = t_[i][cols_];
    }
    out.value = z[cols_];
    return Status::Optimal;
  }

 private:
  // Returns false when the objective is unbounded.
  bool optimize(std::size_t usable) {
    auto& z = t_[rows_];
    for (;;) {
      std::size_t enter = usable;
      for (std::size_t j = 0; j < usable; ++j) {
        if (z[j] < -kEps) {
          enter = j;
          break;
        }
      }
      if (enter == usable) return true;
      std::size_t leave = rows_;
      double best = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (!active_[i] || t_[i][enter] <= kEps) continue;
        const double ratio = t_[i][cols_] / t_[i][enter];
        if (leave == rows_ || ratio < best - kEps ||
            (std::abs(ratio - best) <= kEps && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < vars_) continue;
      std::size_t col = vars_;
      for (std::size_t j = 0; j < vars_; ++j) {
        if (std::abs(t_[i][j]) > kEps) {
          col = j;
          break;
        }
      }
      if (col == vars_) {
        active_[i] = false;  // redundant equality
      } else {
        pivot(i, col);
      }
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / t_[r][c];
    for (double& v : t_[r]) v *= inv;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double f = t_[i][c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) t_[i][j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  std::size_t rows_;
  std::size_t vars_;
  std::size_t cols_;
  std::vector<std::vector<double>> t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_ = std::vector<bool>(rows_, true);
};

}  // namespace detail

inline Result maximize(const Problem& p) {
  if (p.b.size() != p.a.size()) throw UsageError("lp: |b| != rows(A)");
  Result out;
  detail::Tableau tableau(p);
  out.status = tableau.solve(p.c, out);
  return out;
}

}  // namespace cvnet::lp
