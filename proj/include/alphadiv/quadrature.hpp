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

#include <cstddef>
#include <stdexcept>

namespace alphadiv {

// Fixed integration grid for composite Simpson quadrature. A fixed grid keeps
// every estimate deterministic and reproducible across runs and platforms.
struct QuadratureGrid {
  double lo = -12.0;
  double hi = 12.0;
  std::size_t points = 8193;

  void validate() const {
    if (!(hi > lo)) throw std::invalid_argument("grid upper bound not above lower bound");
    if (points < 3 || points % 2 == 0) {
      throw std::invalid_argument("grid points must be odd and at least 3");
    }
  }

  double step() const noexcept {
    return (hi - lo) / static_cast<double>(points - 1);
  }

  double node(std::size_t i) const noexcept {
    return lo + step() * static_cast<double>(i);
  }

  // Composite Simpson weight of node i.
  double weight(std::size_t i) const noexcept {
    const double h3 = step() / 3.0;
    if (i == 0 || i + 1 == points) return h3;
    return (i % 2 == 1) ? 4.0 * h3 : 2.0 * h3;
  }
};

template <typename F>
double integrate(const QuadratureGrid& grid, F&& f) {
  grid.validate();
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.points; ++i) {
    acc += grid.weight(i) * f(grid.node(i));
  }
  return acc;
}

// Composite trapezoid rule on an even spacing, used for cheap normalization
// checks where Simpson's oscillating weights add nothing.
template <typename F>
double integrate_trapezoid(double lo, double hi, std::size_t points, F&& f) {
  if (!(hi > lo) || points < 2) {
    throw std::invalid_argument("bad trapezoid range");
  }
  const double h = (hi - lo) / static_cast<double>(points - 1);
  double acc = 0.5 * (f(lo) + f(hi));
  for (std::size_t i = 1; i + 1 < points; ++i) {
    acc += f(lo + h * static_cast<double>(i));
  }
  return acc * h;
}

}  // namespace alphadiv
