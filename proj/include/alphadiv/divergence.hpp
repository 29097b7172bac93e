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
#include <span>
#include <stdexcept>
#include <vector>

#include "alphadiv/bandwidth.hpp"
#include "alphadiv/density.hpp"
#include "alphadiv/kde.hpp"
#include "alphadiv/quadrature.hpp"
#include "alphadiv/sample.hpp"

namespace alphadiv {

// Divergence order alpha, excluding the degenerate values 0 and 1. The
// checked constructor additionally restricts to (0,1), the range on which the
// estimator theory is established; unchecked() admits any other real order.
class DivergenceOrder {
 public:
  explicit DivergenceOrder(double alpha) : alpha_(alpha) {
    reject_degenerate(alpha);
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw std::invalid_argument("order outside (0,1); use unchecked for other values");
    }
  }

  static DivergenceOrder unchecked(double alpha) {
    reject_degenerate(alpha);
    DivergenceOrder order;
    order.alpha_ = alpha;
    return order;
  }

  double alpha() const noexcept { return alpha_; }

 private:
  DivergenceOrder() = default;
  static void reject_degenerate(double alpha) {
    if (!(std::isfinite(alpha)) || alpha == 0.0 || alpha == 1.0) {
      throw std::invalid_argument("order must be a finite real excluding 0 and 1");
    }
  }
  double alpha_ = 0.5;
};

enum class DivergenceKind { AlphaDiv, Renyi };

// A divergence value with its order, the quadrature it was computed on, the
// sample size behind any kernel density plug-in (0 for exact inputs), and a
// record of how much integrand mass sat near the grid boundary.
struct DivergenceEstimate {
  DivergenceKind kind = DivergenceKind::AlphaDiv;
  double order_alpha = 0.5;
  double value = 0.0;
  std::size_t n = 0;
  QuadratureGrid quadrature{};
  double boundary_mass = 0.0;
  bool boundary_warning = false;
};

inline constexpr double kBoundaryMassWarnThreshold = 1e-8;

namespace detail {

// Integral of p^alpha q^(1-alpha) over the grid from precomputed log
// densities. Terms are assembled in log space: a vanishing p contributes
// zero, a vanishing q under positive p makes the likelihood ratio unbounded.
struct MixedIntegral {
  double value = 0.0;
  double boundary_mass = 0.0;
};

inline MixedIntegral mixed_power_integral(std::span<const double> logp,
                                          std::span<const double> logq,
                                          double alpha,
                                          const QuadratureGrid& grid) {
  grid.validate();
  if (logp.size() != grid.points || logq.size() != grid.points) {
    throw std::invalid_argument("log density arrays do not match grid");
  }
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  MixedIntegral out;
  for (std::size_t i = 0; i < grid.points; ++i) {
    double term = 0.0;
    if (logp[i] > kNegInf) {
      if (logq[i] == kNegInf) {
        throw std::domain_error("unbounded likelihood ratio");
      }
      term = std::exp(alpha * logp[i] + (1.0 - alpha) * logq[i]);
    }
    if (!std::isfinite(term)) throw std::domain_error("integral diverged");
    const double contribution = grid.weight(i) * term;
    out.value += contribution;
    if (i < 2 || i + 2 >= grid.points) out.boundary_mass += contribution;
  }
  if (!std::isfinite(out.value)) throw std::domain_error("integral diverged");
  return out;
}

inline std::vector<double> log_density_grid(const DensityModel& model,
                                            const QuadratureGrid& grid) {
  grid.validate();
  std::vector<double> out(grid.points);
  for (std::size_t i = 0; i < grid.points; ++i) {
    out[i] = model.log_density(grid.node(i));
  }
  return out;
}

inline DivergenceEstimate alpha_divergence_from_logs(
    std::span<const double> logp, std::span<const double> logq, double alpha,
    const QuadratureGrid& grid, std::size_t n) {
  const MixedIntegral integral = mixed_power_integral(logp, logq, alpha, grid);
  DivergenceEstimate est;
  est.kind = DivergenceKind::AlphaDiv;
  est.order_alpha = alpha;
  est.value = (1.0 - integral.value) / (alpha * (1.0 - alpha));
  est.n = n;
  est.quadrature = grid;
  est.boundary_mass = integral.boundary_mass;
  est.boundary_warning = integral.boundary_mass > kBoundaryMassWarnThreshold;
  return est;
}

}  // namespace detail

// D_alpha(p, q) = (1/(alpha(1-alpha))) * (1 - integral of p^alpha q^(1-alpha)),
// evaluated by composite Simpson quadrature on the given grid.
inline DivergenceEstimate alpha_divergence(
    const DensityModel& p, const DensityModel& q, DivergenceOrder order,
    const QuadratureGrid& grid = QuadratureGrid{}) {
  return detail::alpha_divergence_from_logs(
      detail::log_density_grid(p, grid), detail::log_density_grid(q, grid),
      order.alpha(), grid, 0);
}

// R_alpha(p, q) = (1/(alpha-1)) * log integral of p^alpha q^(1-alpha), on the
// same quadrature as alpha_divergence.
inline DivergenceEstimate renyi_divergence(
    const DensityModel& p, const DensityModel& q, DivergenceOrder order,
    const QuadratureGrid& grid = QuadratureGrid{}) {
  const double alpha = order.alpha();
  const detail::MixedIntegral integral = detail::mixed_power_integral(
      detail::log_density_grid(p, grid), detail::log_density_grid(q, grid),
      alpha, grid);
  if (!(integral.value > 0.0)) throw std::domain_error("log of nonpositive");
  DivergenceEstimate est;
  est.kind = DivergenceKind::Renyi;
  est.order_alpha = alpha;
  est.value = std::log(integral.value) / (alpha - 1.0);
  est.n = 0;
  est.quadrature = grid;
  est.boundary_mass = integral.boundary_mass;
  est.boundary_warning = integral.boundary_mass > kBoundaryMassWarnThreshold;
  return est;
}

// Exact identity between the two divergences:
// D_alpha = (exp((alpha-1) R_alpha) - 1) / (alpha (alpha-1)).
inline DivergenceEstimate alpha_from_renyi(const DivergenceEstimate& r) {
  if (r.kind != DivergenceKind::Renyi) {
    throw std::invalid_argument("input estimate is not a renyi divergence");
  }
  const double alpha = r.order_alpha;
  DivergenceEstimate est = r;
  est.kind = DivergenceKind::AlphaDiv;
  est.value = std::expm1((alpha - 1.0) * r.value) / (alpha * (alpha - 1.0));
  return est;
}

// Closed-form Renyi divergence between gaussian-family models:
// R_alpha(p||q) = alpha (mu_p - mu_q)^2 / (2 s2)
//   + (log s2 - (1-alpha) log var_p - alpha log var_q) / (2 (1-alpha)),
// with s2 = (1-alpha) var_p + alpha var_q, which must be positive.
inline double gaussian_renyi_oracle(const DensityModel& p,
                                    const DensityModel& q,
                                    DivergenceOrder order) {
  if (!p.is_gaussian_family() || !q.is_gaussian_family()) {
    throw std::invalid_argument("oracle requires gaussian-family models");
  }
  const double alpha = order.alpha();
  const double vp = p.gaussian_variance();
  const double vq = q.gaussian_variance();
  const double s2 = vp + alpha * (vq - vp);
  if (!(s2 > 0.0)) throw std::domain_error("order outside admissible range");
  const double dmu = p.gaussian_mean() - q.gaussian_mean();
  return alpha * dmu * dmu / (2.0 * s2) +
         ((1.0 - alpha) * std::log(s2 / vp) + alpha * std::log(s2 / vq)) /
             (2.0 * (1.0 - alpha));
}

// Plug-in estimate: fits a kernel density to the sample and evaluates
// D_alpha(kde, model) on the grid.
inline DivergenceEstimate estimate_divergence(
    const Sample& sample, const DensityModel& model, DivergenceOrder order,
    const KernelSpec& kernel, double bandwidth,
    const QuadratureGrid& grid = QuadratureGrid{}) {
  const KdeFit fit(sample, kernel, bandwidth);
  const DensityModel kde = DensityModel::kde(fit);
  return detail::alpha_divergence_from_logs(
      detail::log_density_grid(kde, grid),
      detail::log_density_grid(model, grid), order.alpha(), grid,
      sample.size());
}

}  // namespace alphadiv
