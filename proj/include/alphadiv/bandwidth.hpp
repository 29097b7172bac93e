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
#include <string>
#include <vector>

#include "alphadiv/sample.hpp"
#include "alphadiv/stats.hpp"

namespace alphadiv {

// A bandwidth h together with the admissible band [h_lower, h_upper] and the
// rate exponent beta of the consistency condition (n h)^(1-beta) > log n.
struct BandwidthSchedule {
  double h = 0.0;
  double h_lower = 0.0;
  double h_upper = 0.0;
  double rate_exponent_beta = 0.5;
  std::size_t n = 0;
};

struct ScheduleCheck {
  bool ok = true;
  std::vector<std::string> diagnostics;
};

// Silverman's rule of thumb, h = 1.06 * sd * n^(-1/5).
inline double bandwidth_silverman(const Sample& sample) {
  if (sample.size() < 2) throw std::invalid_argument("sample size below 2");
  const double sd = sample_stddev(sample.values);
  if (!(sd > 0.0)) throw std::invalid_argument("zero variance");
  return 1.06 * sd *
         std::pow(static_cast<double>(sample.size()), -0.2);
}

// Advisory check of the schedule conditions; never throws.
inline ScheduleCheck check_schedule(const BandwidthSchedule& sched) {
  ScheduleCheck result;
  auto fail = [&result](const std::string& msg) {
    result.ok = false;
    result.diagnostics.push_back(msg);
  };
  if (!(sched.h_lower > 0.0)) fail("h_lower not positive");
  if (!(sched.h_lower <= sched.h)) fail("h below h_lower");
  if (!(sched.h <= sched.h_upper)) fail("h above h_upper");
  if (!(sched.rate_exponent_beta > 0.0 && sched.rate_exponent_beta < 1.0)) {
    fail("beta outside (0,1)");
  }
  if (sched.n == 0) {
    fail("n not positive");
  } else {
    const double nh = static_cast<double>(sched.n) * sched.h;
    const double rate = std::pow(nh, 1.0 - sched.rate_exponent_beta);
    if (!(std::isfinite(rate) && rate > std::log(static_cast<double>(sched.n)))) {
      fail("(n*h)^(1-beta) not above log(n)");
    }
  }
  return result;
}

}  // namespace alphadiv
