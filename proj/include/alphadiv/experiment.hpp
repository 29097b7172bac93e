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
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "alphadiv/divergence.hpp"
#include "alphadiv/inference.hpp"
#include "alphadiv/model_spec.hpp"

namespace alphadiv {

enum class BandwidthRule { Silverman, Fixed };
enum class TableFormat { Csv, Json };

// Monte Carlo study configuration. The data generating process is the
// mixture pi * N(0,1) + (1-pi) * N(0,v2), where v2 is 2 under the default
// "variance" interpretation and 4 under "stddev". Candidate models default
// to N(0,1) and N(0,v2) unless given explicitly.
struct ExperimentConfig {
  double pi = 1.0;
  std::vector<std::size_t> sample_sizes = {20, 100, 300, 500, 1000, 1500, 2000};
  std::size_t replications = 1000;
  double order_alpha = 0.5;
  double level = 0.05;
  KernelSpec kernel = KernelSpec::gaussian();
  BandwidthRule bandwidth_rule = BandwidthRule::Silverman;
  double fixed_h = 0.0;
  std::uint64_t seed = 20260817;
  std::string n02_interpretation = "variance";
  std::optional<DensityModel> model1;
  std::optional<DensityModel> model2;
  QuadratureGrid grid{};

  double component2_variance() const {
    if (n02_interpretation == "variance") return 2.0;
    if (n02_interpretation == "stddev") return 4.0;
    throw std::invalid_argument("n02_interpretation must be 'variance' or 'stddev'");
  }

  DensityModel resolve_model1() const {
    return model1 ? *model1 : DensityModel::gaussian(0.0, 1.0);
  }

  DensityModel resolve_model2() const {
    return model2 ? *model2 : DensityModel::gaussian(0.0, component2_variance());
  }

  void validate() const {
    if (!(pi >= 0.0 && pi <= 1.0)) throw std::invalid_argument("pi outside [0,1]");
    if (replications == 0) throw std::invalid_argument("replications below 1");
    if (sample_sizes.empty()) throw std::invalid_argument("no sample sizes");
    for (std::size_t n : sample_sizes) {
      if (n < 2) throw std::invalid_argument("sample size below 2");
    }
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("level outside (0,1)");
    DivergenceOrder order(order_alpha);
    (void)order;
    kernel.validate();
    grid.validate();
    if (bandwidth_rule == BandwidthRule::Fixed && !(fixed_h > 0.0)) {
      throw std::invalid_argument("fixed bandwidth not positive");
    }
    (void)component2_variance();
  }

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig from_json_file(const std::string& path);
};

struct TableRow {
  std::size_t n = 0;
  double mean_d1 = 0.0;
  double mean_d2 = 0.0;
  double mean_di = 0.0;
  double pct_model1 = 0.0;
  double pct_model2 = 0.0;
  double pct_indecisive = 0.0;
};

// Draws n observations from pi * N(0,1) + (1-pi) * N(0,comp2_variance).
inline Sample sample_mixture(double pi, std::size_t n, std::uint64_t seed,
                             double comp2_variance = 2.0) {
  if (!(pi >= 0.0 && pi <= 1.0)) throw std::invalid_argument("pi outside [0,1]");
  if (!(comp2_variance > 0.0)) throw std::invalid_argument("variance not positive");
  Rng rng(seed);
  const double sd2 = std::sqrt(comp2_variance);
  Sample sample;
  sample.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.next_uniform();
    const double z = rng.next_normal();
    sample.values.push_back(u < pi ? z : sd2 * z);
  }
  sample.seed = seed;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "mixture(pi=%.6g,v2=%.6g)", pi, comp2_variance);
  sample.dgp_id = buf;
  return sample;
}

// Runs the replication study: for every sample size, `replications`
// independent draws, each pushed through model selection. Replication r at
// size n uses the stream derived from (seed, n, r), so results do not depend
// on loop order and any subset is reproducible in isolation.
inline std::vector<TableRow> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const DivergenceOrder order(cfg.order_alpha);
  const DensityModel f1 = cfg.resolve_model1();
  const DensityModel f2 = cfg.resolve_model2();
  const double v2 = cfg.component2_variance();

  std::vector<TableRow> rows;
  rows.reserve(cfg.sample_sizes.size());
  for (std::size_t n : cfg.sample_sizes) {
    double sum_d1 = 0.0, sum_d2 = 0.0, sum_di = 0.0;
    std::size_t count_m1 = 0, count_m2 = 0, count_ind = 0;
    for (std::size_t r = 0; r < cfg.replications; ++r) {
      const std::uint64_t stream = derive_stream(cfg.seed, n, r);
      try {
        const Sample sample = sample_mixture(cfg.pi, n, stream, v2);
        const double h = (cfg.bandwidth_rule == BandwidthRule::Fixed)
                             ? cfg.fixed_h
                             : bandwidth_silverman(sample);
        const SelectionResult sel = model_select(sample, f1, f2, order,
                                                 cfg.level, cfg.kernel, h,
                                                 cfg.grid);
        sum_d1 += sel.d1;
        sum_d2 += sel.d2;
        sum_di += sel.di_raw;
        switch (sel.decision) {
          case Decision::Model1: ++count_m1; break;
          case Decision::Model2: ++count_m2; break;
          case Decision::Indecisive: ++count_ind; break;
        }
      } catch (const std::domain_error& e) {
        char ctx[128];
        std::snprintf(ctx, sizeof(ctx),
                      " [n=%zu replication=%zu stream_seed=%llu]", n, r,
                      static_cast<unsigned long long>(stream));
        throw std::domain_error(std::string(e.what()) + ctx);
      }
    }
    const double reps = static_cast<double>(cfg.replications);
    TableRow row;
    row.n = n;
    row.mean_d1 = sum_d1 / reps;
    row.mean_d2 = sum_d2 / reps;
    row.mean_di = sum_di / reps;
    row.pct_model1 = 100.0 * static_cast<double>(count_m1) / reps;
    row.pct_model2 = 100.0 * static_cast<double>(count_m2) / reps;
    row.pct_indecisive = 100.0 * static_cast<double>(count_ind) / reps;
    rows.push_back(row);
  }
  return rows;
}

namespace detail {

inline std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace detail

// Serializes table rows. CSV column order is fixed by the header below;
// numbers carry six significant digits.
inline std::string emit_table(const std::vector<TableRow>& rows,
                              TableFormat format) {
  if (rows.empty()) throw std::invalid_argument("no rows");
  std::ostringstream out;
  if (format == TableFormat::Csv) {
    out << "n,mean_d1,mean_d2,mean_di,pct_model1,pct_indecisive,pct_model2\n";
    for (const TableRow& row : rows) {
      out << row.n << ',' << detail::fmt6(row.mean_d1) << ','
          << detail::fmt6(row.mean_d2) << ',' << detail::fmt6(row.mean_di)
          << ',' << detail::fmt6(row.pct_model1) << ','
          << detail::fmt6(row.pct_indecisive) << ','
          << detail::fmt6(row.pct_model2) << '\n';
    }
    return out.str();
  }
  out << "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const TableRow& row = rows[i];
    out << "  {\"n\": " << row.n
        << ", \"mean_d1\": " << detail::fmt6(row.mean_d1)
        << ", \"mean_d2\": " << detail::fmt6(row.mean_d2)
        << ", \"mean_di\": " << detail::fmt6(row.mean_di)
        << ", \"pct_model1\": " << detail::fmt6(row.pct_model1)
        << ", \"pct_indecisive\": " << detail::fmt6(row.pct_indecisive)
        << ", \"pct_model2\": " << detail::fmt6(row.pct_model2) << "}"
        << (i + 1 < rows.size() ? "," : "") << '\n';
  }
  out << "]\n";
  return out.str();
}

// Figure data for external plotting, one CSV with three block types:
//   hist:   a = bin lower edge, b = bin upper edge, c = count
//   curve:  a = x, b = model1 density, c = model2 density   (512 rows)
//   series: a = n, b = divergence to model1, c = divergence to model2
inline std::string emit_figure_data(const ExperimentConfig& cfg,
                                    std::size_t n) {
  cfg.validate();
  if (n < 2) throw std::invalid_argument("sample size below 2");
  const double v2 = cfg.component2_variance();
  const DensityModel f1 = cfg.resolve_model1();
  const DensityModel f2 = cfg.resolve_model2();
  const DivergenceOrder order(cfg.order_alpha);

  const Sample sample =
      sample_mixture(cfg.pi, n, derive_stream(cfg.seed, n, 0), v2);
  const auto [min_it, max_it] =
      std::minmax_element(sample.values.begin(), sample.values.end());
  const double lo = *min_it;
  const double hi = *max_it;

  std::ostringstream out;
  out << "block,a,b,c\n";

  constexpr std::size_t kBins = 32;
  const double width = (hi - lo) / static_cast<double>(kBins);
  std::vector<std::size_t> counts(kBins, 0);
  for (double x : sample.values) {
    std::size_t idx = (width > 0.0)
                          ? static_cast<std::size_t>((x - lo) / width)
                          : 0;
    if (idx >= kBins) idx = kBins - 1;
    ++counts[idx];
  }
  for (std::size_t b = 0; b < kBins; ++b) {
    out << "hist," << detail::fmt6(lo + width * static_cast<double>(b)) << ','
        << detail::fmt6(lo + width * static_cast<double>(b + 1)) << ','
        << counts[b] << '\n';
  }

  constexpr std::size_t kCurvePoints = 512;
  const double clo = lo - 1.0;
  const double chi = hi + 1.0;
  const double cstep = (chi - clo) / static_cast<double>(kCurvePoints - 1);
  for (std::size_t i = 0; i < kCurvePoints; ++i) {
    const double x = clo + cstep * static_cast<double>(i);
    out << "curve," << detail::fmt6(x) << ',' << detail::fmt6(f1.density(x))
        << ',' << detail::fmt6(f2.density(x)) << '\n';
  }

  for (std::size_t size : cfg.sample_sizes) {
    const Sample s =
        sample_mixture(cfg.pi, size, derive_stream(cfg.seed, size, 0), v2);
    const double h = (cfg.bandwidth_rule == BandwidthRule::Fixed)
                         ? cfg.fixed_h
                         : bandwidth_silverman(s);
    const double d1 =
        estimate_divergence(s, f1, order, cfg.kernel, h, cfg.grid).value;
    const double d2 =
        estimate_divergence(s, f2, order, cfg.kernel, h, cfg.grid).value;
    out << "series," << size << ',' << detail::fmt6(d1) << ','
        << detail::fmt6(d2) << '\n';
  }
  return out.str();
}

inline ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "pi") {
      cfg.pi = value.get<double>();
    } else if (key == "sample_sizes") {
      cfg.sample_sizes = value.get<std::vector<std::size_t>>();
    } else if (key == "replications") {
      cfg.replications = value.get<std::size_t>();
    } else if (key == "order_alpha") {
      cfg.order_alpha = value.get<double>();
    } else if (key == "level") {
      cfg.level = value.get<double>();
    } else if (key == "kernel") {
      const std::string name = value.get<std::string>();
      if (name == "gaussian") {
        cfg.kernel = KernelSpec::gaussian();
      } else if (name == "epanechnikov") {
        cfg.kernel = KernelSpec::epanechnikov();
      } else if (name == "uniform") {
        cfg.kernel = KernelSpec::uniform();
      } else {
        throw std::invalid_argument("unknown kernel '" + name + "'");
      }
    } else if (key == "bandwidth_rule") {
      const std::string name = value.get<std::string>();
      if (name == "silverman") {
        cfg.bandwidth_rule = BandwidthRule::Silverman;
      } else if (name == "fixed") {
        cfg.bandwidth_rule = BandwidthRule::Fixed;
      } else {
        throw std::invalid_argument("unknown bandwidth_rule '" + name + "'");
      }
    } else if (key == "fixed_h") {
      cfg.fixed_h = value.get<double>();
    } else if (key == "seed") {
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "n02_interpretation") {
      cfg.n02_interpretation = value.get<std::string>();
    } else if (key == "model1") {
      cfg.model1 = parse_density_spec(value.get<std::string>());
    } else if (key == "model2") {
      cfg.model2 = parse_density_spec(value.get<std::string>());
    } else if (key == "grid") {
      cfg.grid.lo = value.at("lo").get<double>();
      cfg.grid.hi = value.at("hi").get<double>();
      cfg.grid.points = value.at("points").get<std::size_t>();
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

inline ExperimentConfig ExperimentConfig::from_json_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config parse failure in '" + path +
                                "': " + e.what());
  }
  try {
    return from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config field failure in '" + path +
                                "': " + e.what());
  }
}

}  // namespace alphadiv
