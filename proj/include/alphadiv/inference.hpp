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
#include <stdexcept>
#include <vector>

#include "alphadiv/divergence.hpp"
#include "alphadiv/stats.hpp"

namespace alphadiv {

struct GofResult {
  double statistic = 0.0;
  double threshold = 0.0;
  double significance_level = 0.0;
  bool reject = false;
};

// Rejection rule of the goodness-of-fit test; the boundary rejects.
inline bool gof_decision(double statistic, double threshold) noexcept {
  return statistic >= threshold;
}

// One-sided goodness-of-fit test of H0: the sample's density equals the
// model. The critical value is quantile(1 - level) * scale_sigma, with the
// scale supplied by the caller. A nonpositive bandwidth requests Silverman's
// rule.
inline GofResult gof_test(const Sample& sample, const DensityModel& model,
                          DivergenceOrder order, double level,
                          double scale_sigma,
                          const KernelSpec& kernel = KernelSpec::gaussian(),
                          double bandwidth = 0.0,
                          const QuadratureGrid& grid = QuadratureGrid{}) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("level outside (0,1)");
  }
  if (!(scale_sigma > 0.0)) {
    throw std::invalid_argument("scale_sigma not positive");
  }
  const double h = bandwidth > 0.0 ? bandwidth : bandwidth_silverman(sample);
  const DivergenceEstimate est =
      estimate_divergence(sample, model, order, kernel, h, grid);
  GofResult result;
  result.statistic = est.value;
  result.threshold = normal_quantile(1.0 - level) * scale_sigma;
  result.significance_level = level;
  result.reject = gof_decision(result.statistic, result.threshold);
  return result;
}

enum class Decision { Model1, Model2, Indecisive };

inline const char* to_string(Decision d) noexcept {
  switch (d) {
    case Decision::Model1:
      return "Model1";
    case Decision::Model2:
      return "Model2";
    case Decision::Indecisive:
      return "Indecisive";
  }
  return "unknown";
}

struct SelectionResult {
  double d1 = 0.0;
  double d2 = 0.0;
  double di_raw = 0.0;
  double di_scaled = 0.0;
  double variance_estimate = 0.0;
  Decision decision = Decision::Indecisive;
  double significance_level = 0.0;
};

struct PointwiseVariance {
  enum class Formula { SigmaJ, Gamma };
  Formula formula = Formula::SigmaJ;
  double evaluated_at = 0.0;
  double value = 0.0;
};

// Pointwise asymptotic variance of a single plug-in divergence:
// sigma_j^2(x) = (1/(1-alpha)^2) (f_j(x)/f(x))^(4-4 alpha) f(x)^2 sigma2_x.
inline PointwiseVariance pointwise_sigma_j(const DensityModel& f,
                                           const DensityModel& fj,
                                           DivergenceOrder order, double x,
                                           double sigma2_x) {
  if (!(sigma2_x >= 0.0)) throw std::invalid_argument("sigma2_x negative");
  const double alpha = order.alpha();
  const double fx = f.density(x);
  if (!(fx > 0.0)) throw std::domain_error("density vanishes");
  const double ratio = fj.density(x) / fx;
  const double om = 1.0 - alpha;
  PointwiseVariance pv;
  pv.formula = PointwiseVariance::Formula::SigmaJ;
  pv.evaluated_at = x;
  pv.value = std::pow(ratio, 4.0 - 4.0 * alpha) * fx * fx * sigma2_x / (om * om);
  return pv;
}

// Pointwise asymptotic variance of the divergence indicator:
// Gamma(x) = (1/(1-alpha)^2) [ (f1/f)^(1-alpha) - (f2/f)^(1-alpha) ]^4
//            * f(x)^2 sigma2_x.
inline PointwiseVariance pointwise_gamma(const DensityModel& f,
                                         const DensityModel& f1,
                                         const DensityModel& f2,
                                         DivergenceOrder order, double x,
                                         double sigma2_x) {
  if (!(sigma2_x >= 0.0)) throw std::invalid_argument("sigma2_x negative");
  const double alpha = order.alpha();
  const double fx = f.density(x);
  if (!(fx > 0.0)) throw std::domain_error("density vanishes");
  const double om = 1.0 - alpha;
  const double bracket =
      std::pow(f1.density(x) / fx, om) - std::pow(f2.density(x) / fx, om);
  const double b2 = bracket * bracket;
  PointwiseVariance pv;
  pv.formula = PointwiseVariance::Formula::Gamma;
  pv.evaluated_at = x;
  pv.value = b2 * b2 * fx * fx * sigma2_x / (om * om);
  return pv;
}

namespace detail {

inline std::vector<double> influence_values(const Sample& sample,
                                            std::span<const double> fhat_at_w,
                                            const DensityModel& f1,
                                            const DensityModel& f2,
                                            double alpha) {
  const double om = 1.0 - alpha;
  std::vector<double> psi(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double w = sample.values[i];
    const double fhat = fhat_at_w[i];
    if (!(fhat > 0.0)) throw std::domain_error("density vanishes");
    psi[i] = (std::pow(f1.density(w) / fhat, om) -
              std::pow(f2.density(w) / fhat, om)) /
             om;
  }
  return psi;
}

}  // namespace detail

// Scalar variance estimate for the divergence indicator: the sample variance
// of the influence values psi(W_i) = (1/(1-alpha)) [ (f1(W_i)/fhat(W_i))^(1-alpha)
// - (f2(W_i)/fhat(W_i))^(1-alpha) ].
inline double estimate_gamma_integrated(const Sample& sample,
                                        const DensityModel& f1,
                                        const DensityModel& f2,
                                        DivergenceOrder order,
                                        const KernelSpec& kernel,
                                        double bandwidth) {
  const KdeFit fit(sample, kernel, bandwidth);
  const std::vector<double> fhat = kde_evaluate_many(fit, sample.values);
  const std::vector<double> psi =
      detail::influence_values(sample, fhat, f1, f2, order.alpha());
  return sample_variance(psi);
}

// Three-way decision rule from the standardized indicator.
inline Decision selection_decision(double di_scaled,
                                   double threshold) noexcept {
  if (std::abs(di_scaled) <= threshold) return Decision::Indecisive;
  return di_scaled < 0.0 ? Decision::Model1 : Decision::Model2;
}

// Divergence-based model selection between two candidate densities. Fits one
// kernel density to the sample, estimates both divergences on the shared
// grid, standardizes their difference by sqrt(n h) and the integrated
// variance estimate, and applies the two-sided indecision band.
inline SelectionResult model_select(const Sample& sample,
                                    const DensityModel& f1,
                                    const DensityModel& f2,
                                    DivergenceOrder order, double level,
                                    const KernelSpec& kernel = KernelSpec::gaussian(),
                                    double bandwidth = 0.0,
                                    const QuadratureGrid& grid = QuadratureGrid{}) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("level outside (0,1)");
  }
  const double h = bandwidth > 0.0 ? bandwidth : bandwidth_silverman(sample);
  const KdeFit fit(sample, kernel, h);
  const DensityModel kde = DensityModel::kde(fit);
  const std::vector<double> log_fhat = detail::log_density_grid(kde, grid);
  const double alpha = order.alpha();

  const DivergenceEstimate e1 = detail::alpha_divergence_from_logs(
      log_fhat, detail::log_density_grid(f1, grid), alpha, grid,
      sample.size());
  const DivergenceEstimate e2 = detail::alpha_divergence_from_logs(
      log_fhat, detail::log_density_grid(f2, grid), alpha, grid,
      sample.size());

  const std::vector<double> fhat_at_w = kde_evaluate_many(fit, sample.values);
  const std::vector<double> psi =
      detail::influence_values(sample, fhat_at_w, f1, f2, alpha);
  const double gamma = sample_variance(psi);

  SelectionResult result;
  result.d1 = e1.value;
  result.d2 = e2.value;
  result.di_raw = result.d1 - result.d2;
  result.di_scaled =
      std::sqrt(static_cast<double>(sample.size()) * h) * result.di_raw;
  result.variance_estimate = gamma;
  result.significance_level = level;
  const double z = normal_quantile(1.0 - level / 2.0);
  result.decision = selection_decision(result.di_scaled, z * std::sqrt(gamma));
  return result;
}

}  // namespace alphadiv
