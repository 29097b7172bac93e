//------------------------------------------------------------------------------
//
//   Copyright 2026 The alphadiv Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "alphadiv/kernel.hpp"
#include "alphadiv/quadrature.hpp"
#include "alphadiv/sample.hpp"

namespace alphadiv {

// An immutable kernel density fit: f(x) = (1/(n h)) sum_i K((W_i - x)/h).
struct KdeFit {
  Sample sample;
  KernelSpec kernel;
  double bandwidth = 0.0;

  KdeFit(Sample s, KernelSpec k, double h)
      : sample(std::move(s)), kernel(k), bandwidth(h) {
    if (sample.empty()) throw std::invalid_argument("empty sample");
    if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth not positive");
    kernel.validate();
  }
};

inline double kde_evaluate(const KdeFit& fit, double x) {
  const double h = fit.bandwidth;
  double acc = 0.0;
  for (double w : fit.sample.values) {
    acc += kernel_eval(fit.kernel, (w - x) / h);
  }
  return acc / (static_cast<double>(fit.sample.size()) * h);
}

inline std::vector<double> kde_evaluate_many(const KdeFit& fit,
                                             std::span<const double> xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = kde_evaluate(fit, xs[i]);
  return out;
}

inline std::vector<double> kde_evaluate_grid(const KdeFit& fit,
                                             const QuadratureGrid& grid) {
  grid.validate();
  std::vector<double> out(grid.points);
  for (std::size_t i = 0; i < grid.points; ++i) {
    out[i] = kde_evaluate(fit, grid.node(i));
  }
  return out;
}

}  // namespace alphadiv
