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

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace alphadiv {

enum class KernelFamily { Gaussian, Epanechnikov, Uniform };

// A smoothing kernel: nonnegative, bounded, integrating to one. Compact
// families vanish outside [-support_radius, support_radius]; the Gaussian
// has unbounded support.
struct KernelSpec {
  KernelFamily family = KernelFamily::Gaussian;
  double support_radius = std::numeric_limits<double>::infinity();

  static KernelSpec gaussian() noexcept {
    return {KernelFamily::Gaussian, std::numeric_limits<double>::infinity()};
  }
  static KernelSpec epanechnikov() noexcept {
    return {KernelFamily::Epanechnikov, 1.0};
  }
  static KernelSpec uniform() noexcept { return {KernelFamily::Uniform, 1.0}; }

  void validate() const {
    if (family == KernelFamily::Gaussian) {
      if (std::isfinite(support_radius)) {
        throw std::invalid_argument("gaussian kernel has unbounded support");
      }
      return;
    }
    if (!(support_radius > 0.0) || !std::isfinite(support_radius)) {
      throw std::invalid_argument("compact kernel needs a positive finite support radius");
    }
  }
};

// Evaluates K(t). Compact kernels with support radius r are the unit-radius
// forms rescaled as K(t/r)/r, so the integral stays one.
inline double kernel_eval(const KernelSpec& spec, double t) {
  switch (spec.family) {
    case KernelFamily::Gaussian:
      return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
    case KernelFamily::Epanechnikov: {
      const double u = t / spec.support_radius;
      if (std::abs(u) > 1.0) return 0.0;
      return 0.75 * (1.0 - u * u) / spec.support_radius;
    }
    case KernelFamily::Uniform: {
      const double u = t / spec.support_radius;
      if (std::abs(u) > 1.0) return 0.0;
      return 0.5 / spec.support_radius;
    }
  }
  throw std::invalid_argument("unknown kernel family");
}

// Supremum of K, attained at the origin for every provided family.
inline double kernel_sup(const KernelSpec& spec) { return kernel_eval(spec, 0.0); }

}  // namespace alphadiv
