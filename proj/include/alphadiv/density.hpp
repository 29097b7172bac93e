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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "alphadiv/kde.hpp"
#include "alphadiv/rng.hpp"

namespace alphadiv {

enum class DensityFamily { Gaussian, Mixture, Kde, Ar1M1, Ar1M2 };

// An evaluable probability density with a declared family. Gaussian and
// mixture models expose analytic log densities so deep-tail evaluation never
// underflows to a spurious zero; a kernel density fit may genuinely vanish
// far from its sample, and log_density reports that as -infinity.
class DensityModel {
 public:
  static DensityModel gaussian(double mean, double variance) {
    return DensityModel(DensityFamily::Gaussian, mean, variance);
  }

  static DensityModel mixture(double weight, DensityModel comp1,
                              DensityModel comp2) {
    if (!(weight >= 0.0 && weight <= 1.0)) {
      throw std::invalid_argument("mixture weight outside [0,1]");
    }
    DensityModel m(DensityFamily::Mixture, 0.0, 1.0);
    m.weight_ = weight;
    m.comp1_ = std::make_shared<const DensityModel>(std::move(comp1));
    m.comp2_ = std::make_shared<const DensityModel>(std::move(comp2));
    return m;
  }

  static DensityModel kde(KdeFit fit) {
    DensityModel m(DensityFamily::Kde, 0.0, 1.0);
    m.fit_ = std::make_shared<const KdeFit>(std::move(fit));
    return m;
  }

  // Marginal density of the differenced series under the random-walk model:
  // N(0, sigma2).
  static DensityModel ar1_m1(double sigma2) {
    DensityModel m(DensityFamily::Ar1M1, 0.0, sigma2);
    m.sigma2_ = sigma2;
    return m;
  }

  // Marginal density of the differenced series under the stationary model:
  // N(0, 2 sigma2 / (1 - phi^2)).
  static DensityModel ar1_m2(double sigma2, double phi) {
    if (!(std::abs(phi) < 1.0)) {
      throw std::invalid_argument("stationarity violated");
    }
    DensityModel m(DensityFamily::Ar1M2, 0.0,
                   2.0 * sigma2 / (1.0 - phi * phi));
    m.sigma2_ = sigma2;
    m.phi_ = phi;
    return m;
  }

  DensityFamily family() const noexcept { return family_; }

  bool is_gaussian_family() const noexcept {
    return family_ == DensityFamily::Gaussian ||
           family_ == DensityFamily::Ar1M1 || family_ == DensityFamily::Ar1M2;
  }

  double density(double x) const {
    switch (family_) {
      case DensityFamily::Gaussian:
      case DensityFamily::Ar1M1:
      case DensityFamily::Ar1M2:
        return std::exp(gaussian_log_density(x));
      case DensityFamily::Mixture:
        return weight_ * comp1_->density(x) +
               (1.0 - weight_) * comp2_->density(x);
      case DensityFamily::Kde:
        return kde_evaluate(*fit_, x);
    }
    throw std::invalid_argument("unknown density family");
  }

  double log_density(double x) const {
    switch (family_) {
      case DensityFamily::Gaussian:
      case DensityFamily::Ar1M1:
      case DensityFamily::Ar1M2:
        return gaussian_log_density(x);
      case DensityFamily::Mixture: {
        const double la = (weight_ > 0.0)
                              ? std::log(weight_) + comp1_->log_density(x)
                              : -std::numeric_limits<double>::infinity();
        const double lb = (weight_ < 1.0)
                              ? std::log1p(-weight_) + comp2_->log_density(x)
                              : -std::numeric_limits<double>::infinity();
        const double m = std::max(la, lb);
        if (m == -std::numeric_limits<double>::infinity()) return m;
        return m + std::log(std::exp(la - m) + std::exp(lb - m));
      }
      case DensityFamily::Kde: {
        const double v = kde_evaluate(*fit_, x);
        return v > 0.0 ? std::log(v)
                       : -std::numeric_limits<double>::infinity();
      }
    }
    throw std::invalid_argument("unknown density family");
  }

  double mean() const {
    switch (family_) {
      case DensityFamily::Gaussian:
      case DensityFamily::Ar1M1:
      case DensityFamily::Ar1M2:
        return mean_;
      case DensityFamily::Mixture:
        return weight_ * comp1_->mean() + (1.0 - weight_) * comp2_->mean();
      case DensityFamily::Kde:
        break;
    }
    throw std::invalid_argument("moment not available for this family");
  }

  double variance() const {
    switch (family_) {
      case DensityFamily::Gaussian:
      case DensityFamily::Ar1M1:
      case DensityFamily::Ar1M2:
        return var_;
      case DensityFamily::Mixture: {
        const double m1 = comp1_->mean();
        const double m2 = comp2_->mean();
        const double m = weight_ * m1 + (1.0 - weight_) * m2;
        return weight_ * (comp1_->variance() + (m1 - m) * (m1 - m)) +
               (1.0 - weight_) * (comp2_->variance() + (m2 - m) * (m2 - m));
      }
      case DensityFamily::Kde:
        break;
    }
    throw std::invalid_argument("moment not available for this family");
  }

  bool can_sample() const noexcept { return family_ != DensityFamily::Kde; }

  double sample_one(Rng& rng) const {
    switch (family_) {
      case DensityFamily::Gaussian:
      case DensityFamily::Ar1M1:
      case DensityFamily::Ar1M2:
        return mean_ + std::sqrt(var_) * rng.next_normal();
      case DensityFamily::Mixture: {
        const double u = rng.next_uniform();
        return (u < weight_) ? comp1_->sample_one(rng)
                             : comp2_->sample_one(rng);
      }
      case DensityFamily::Kde:
        break;
    }
    throw std::invalid_argument("cannot sample from a kde model");
  }

  std::string describe() const {
    char buf[128];
    switch (family_) {
      case DensityFamily::Gaussian:
        std::snprintf(buf, sizeof(buf), "normal(%.6g,%.6g)", mean_, var_);
        return buf;
      case DensityFamily::Ar1M1:
        std::snprintf(buf, sizeof(buf), "ar1m1(%.6g)", sigma2_);
        return buf;
      case DensityFamily::Ar1M2:
        std::snprintf(buf, sizeof(buf), "ar1m2(%.6g,%.6g)", sigma2_, phi_);
        return buf;
      case DensityFamily::Mixture:
        std::snprintf(buf, sizeof(buf), "mixture(%.6g,", weight_);
        return std::string(buf) + comp1_->describe() + "," +
               comp2_->describe() + ")";
      case DensityFamily::Kde:
        std::snprintf(buf, sizeof(buf), "kde(n=%zu,h=%.6g)",
                      fit_->sample.size(), fit_->bandwidth);
        return buf;
    }
    return "unknown";
  }

  // Gaussian parameter accessors; only meaningful for the gaussian families.
  double gaussian_mean() const {
    require_gaussian();
    return mean_;
  }
  double gaussian_variance() const {
    require_gaussian();
    return var_;
  }

  const KdeFit& fit() const {
    if (family_ != DensityFamily::Kde) {
      throw std::invalid_argument("not a kde model");
    }
    return *fit_;
  }

 private:
  DensityModel(DensityFamily family, double mean, double variance)
      : family_(family), mean_(mean), var_(variance) {
    if (family_ != DensityFamily::Mixture && family_ != DensityFamily::Kde &&
        !(var_ > 0.0 && std::isfinite(var_))) {
      throw std::invalid_argument("variance not positive");
    }
  }

  double gaussian_log_density(double x) const noexcept {
    const double d = x - mean_;
    return -0.5 * std::log(2.0 * std::numbers::pi * var_) -
           d * d / (2.0 * var_);
  }

  void require_gaussian() const {
    if (!is_gaussian_family()) {
      throw std::invalid_argument("not a gaussian-family model");
    }
  }

  DensityFamily family_;
  double mean_ = 0.0;
  double var_ = 1.0;
  double weight_ = 0.0;
  double sigma2_ = 0.0;
  double phi_ = 0.0;
  std::shared_ptr<const DensityModel> comp1_, comp2_;
  std::shared_ptr<const KdeFit> fit_;
};

}  // namespace alphadiv
