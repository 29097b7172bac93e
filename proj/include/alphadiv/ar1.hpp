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
#include <cstdio>
#include <stdexcept>

#include "alphadiv/density.hpp"
#include "alphadiv/rng.hpp"
#include "alphadiv/sample.hpp"

namespace alphadiv {

// AR(1) recursion X_t - mu = phi (X_{t-1} - mu) + eps_t with gaussian
// innovations of variance sigma2. phi = 1 is the random-walk case.
struct Ar1Config {
  double phi = 1.0;
  double mu = 0.0;
  double sigma2 = 1.0;
  std::size_t n = 100;
  std::uint64_t seed = 1;
  std::size_t burn_in = 0;

  void validate() const {
    if (!(std::abs(phi) <= 1.0)) throw std::invalid_argument("phi outside [-1,1]");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("sigma2 not positive");
    if (n == 0) throw std::invalid_argument("n not positive");
  }
};

struct DifferencedSample {
  Sample w;
};

// Simulates X_0 .. X_n (n + 1 values). X_0 starts from the stationary law
// when |phi| < 1 and from N(mu, sigma2) at |phi| = 1. The path is generated
// around zero and shifted by mu at the end, so runs differing only in mu
// share the centered path bit for bit.
inline Sample simulate_ar1(const Ar1Config& cfg) {
  cfg.validate();
  Rng rng(derive_stream(cfg.seed, 0x617231, 0));
  const double sd = std::sqrt(cfg.sigma2);
  double y = (std::abs(cfg.phi) < 1.0)
                 ? std::sqrt(cfg.sigma2 / (1.0 - cfg.phi * cfg.phi)) *
                       rng.next_normal()
                 : sd * rng.next_normal();
  for (std::size_t t = 0; t < cfg.burn_in; ++t) {
    y = cfg.phi * y + sd * rng.next_normal();
  }
  Sample path;
  path.values.reserve(cfg.n + 1);
  path.values.push_back(cfg.mu + y);
  for (std::size_t t = 1; t <= cfg.n; ++t) {
    y = cfg.phi * y + sd * rng.next_normal();
    path.values.push_back(cfg.mu + y);
  }
  path.seed = cfg.seed;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "ar1(phi=%.6g,mu=%.6g,sigma2=%.6g)", cfg.phi,
                cfg.mu, cfg.sigma2);
  path.dgp_id = buf;
  return path;
}

// First differences W_t = X_t - X_{t-1}; one value shorter than the path.
// The unknown level mu cancels.
inline DifferencedSample difference(const Sample& x) {
  if (x.size() < 2) throw std::invalid_argument("path too short to difference");
  DifferencedSample out;
  out.w.values.reserve(x.size() - 1);
  for (std::size_t i = 1; i < x.size(); ++i) {
    out.w.values.push_back(x.values[i] - x.values[i - 1]);
  }
  out.w.seed = x.seed;
  out.w.dgp_id = x.dgp_id + ":diff";
  return out;
}

// Candidate density of W under the random-walk model: N(0, sigma2).
inline DensityModel m1_density(double sigma2) {
  return DensityModel::ar1_m1(sigma2);
}

// Candidate density of W under the stationary model:
// N(0, 2 sigma2 / (1 - phi^2)). Requires |phi| < 1.
inline DensityModel m2_density(double sigma2, double phi) {
  return DensityModel::ar1_m2(sigma2, phi);
}

}  // namespace alphadiv
