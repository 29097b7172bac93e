#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "alphadiv/experiment.hpp"
#include "alphadiv/stats.hpp"

using namespace alphadiv;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

namespace {

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += (c == '\n');
  return n;
}

}  // namespace

TEST_CASE("mixture sampler hits the component variances", "[sampler]") {
  const Sample pure1 = sample_mixture(1.0, 100000, 5);
  REQUIRE(mean(pure1.values) == Approx(0.0).margin(0.02));
  REQUIRE(sample_variance(pure1.values) == Approx(1.0).epsilon(0.02));

  const Sample pure2 = sample_mixture(0.0, 100000, 6);
  REQUIRE(sample_variance(pure2.values) == Approx(2.0).epsilon(0.02));

  const Sample blend = sample_mixture(0.43, 100000, 7);
  REQUIRE(sample_variance(blend.values) == Approx(1.57).epsilon(0.02));

  const Sample wide = sample_mixture(0.0, 100000, 8, 4.0);
  REQUIRE(sample_variance(wide.values) == Approx(4.0).epsilon(0.02));
}

TEST_CASE("mixture sampler is deterministic and labeled", "[sampler]") {
  const Sample a = sample_mixture(0.5, 100, 9);
  const Sample b = sample_mixture(0.5, 100, 9);
  const Sample c = sample_mixture(0.5, 100, 10);
  REQUIRE(a.values == b.values);
  REQUIRE(a.values != c.values);
  REQUIRE(a.seed == 9);
  REQUIRE(a.dgp_id == "mixture(pi=0.5,v2=2)");
}

TEST_CASE("mixture sampler validates its inputs", "[sampler]") {
  REQUIRE_THROWS_WITH(sample_mixture(-0.1, 10, 1), ContainsSubstring("pi outside [0,1]"));
  REQUIRE_THROWS_WITH(sample_mixture(1.1, 10, 1), ContainsSubstring("pi outside [0,1]"));
  REQUIRE_THROWS_AS(sample_mixture(0.5, 10, 1, 0.0), std::invalid_argument);
}

TEST_CASE("experiment config defaults match the study design", "[config]") {
  const ExperimentConfig cfg;
  REQUIRE(cfg.pi == 1.0);
  REQUIRE(cfg.sample_sizes ==
          std::vector<std::size_t>{20, 100, 300, 500, 1000, 1500, 2000});
  REQUIRE(cfg.replications == 1000);
  REQUIRE(cfg.order_alpha == 0.5);
  REQUIRE(cfg.level == 0.05);
  REQUIRE(cfg.bandwidth_rule == BandwidthRule::Silverman);
  REQUIRE(cfg.component2_variance() == 2.0);
  REQUIRE(cfg.resolve_model1().gaussian_variance() == 1.0);
  REQUIRE(cfg.resolve_model2().gaussian_variance() == 2.0);
  REQUIRE_NOTHROW(cfg.validate());
}

TEST_CASE("second component interpretation switches the variance", "[config]") {
  ExperimentConfig cfg;
  cfg.n02_interpretation = "stddev";
  REQUIRE(cfg.component2_variance() == 4.0);
  REQUIRE(cfg.resolve_model2().gaussian_variance() == 4.0);
  cfg.n02_interpretation = "junk";
  REQUIRE_THROWS_WITH(cfg.component2_variance(),
                      ContainsSubstring("'variance' or 'stddev'"));
}

TEST_CASE("experiment config validation rejects bad fields", "[config]") {
  ExperimentConfig cfg;
  cfg.pi = 1.5;
  REQUIRE_THROWS_WITH(cfg.validate(), ContainsSubstring("pi outside [0,1]"));
  cfg = ExperimentConfig{};
  cfg.replications = 0;
  REQUIRE_THROWS_WITH(cfg.validate(), ContainsSubstring("replications below 1"));
  cfg = ExperimentConfig{};
  cfg.sample_sizes = {};
  REQUIRE_THROWS_WITH(cfg.validate(), ContainsSubstring("no sample sizes"));
  cfg = ExperimentConfig{};
  cfg.sample_sizes = {1};
  REQUIRE_THROWS_WITH(cfg.validate(), ContainsSubstring("sample size below 2"));
  cfg = ExperimentConfig{};
  cfg.level = 1.0;
  REQUIRE_THROWS_WITH(cfg.validate(), ContainsSubstring("level outside (0,1)"));
  cfg = ExperimentConfig{};
  cfg.bandwidth_rule = BandwidthRule::Fixed;
  cfg.fixed_h = 0.0;
  REQUIRE_THROWS_WITH(cfg.validate(),
                      ContainsSubstring("fixed bandwidth not positive"));
}

TEST_CASE("config json round trip with overrides", "[config]") {
  const nlohmann::json j = {
      {"pi", 0.25},
      {"sample_sizes", {50, 100}},
      {"replications", 10},
      {"order_alpha", 0.4},
      {"level", 0.1},
      {"kernel", "epanechnikov"},
      {"bandwidth_rule", "fixed"},
      {"fixed_h", 0.3},
      {"seed", 777},
      {"n02_interpretation", "stddev"},
      {"model1", "normal(0,1)"},
      {"model2", "normal(0,4)"},
      {"grid", {{"lo", -15.0}, {"hi", 15.0}, {"points", 4097}}},
  };
  const ExperimentConfig cfg = ExperimentConfig::from_json(j);
  REQUIRE(cfg.pi == 0.25);
  REQUIRE(cfg.sample_sizes == std::vector<std::size_t>{50, 100});
  REQUIRE(cfg.replications == 10);
  REQUIRE(cfg.order_alpha == 0.4);
  REQUIRE(cfg.level == 0.1);
  REQUIRE(cfg.kernel.family == KernelFamily::Epanechnikov);
  REQUIRE(cfg.bandwidth_rule == BandwidthRule::Fixed);
  REQUIRE(cfg.fixed_h == 0.3);
  REQUIRE(cfg.seed == 777);
  REQUIRE(cfg.component2_variance() == 4.0);
  REQUIRE(cfg.resolve_model2().gaussian_variance() == 4.0);
  REQUIRE(cfg.grid.lo == -15.0);
  REQUIRE(cfg.grid.points == 4097);
}

TEST_CASE("config json rejects unknown keys and bad values", "[config]") {
  REQUIRE_THROWS_WITH(ExperimentConfig::from_json({{"replicas", 10}}),
                      ContainsSubstring("unknown config key 'replicas'"));
  REQUIRE_THROWS_WITH(ExperimentConfig::from_json({{"kernel", "box"}}),
                      ContainsSubstring("unknown kernel 'box'"));
  REQUIRE_THROWS_WITH(ExperimentConfig::from_json({{"bandwidth_rule", "cv"}}),
                      ContainsSubstring("unknown bandwidth_rule 'cv'"));
  REQUIRE_THROWS_AS(ExperimentConfig::from_json({{"pi", 2.0}}),
                    std::invalid_argument);
}

TEST_CASE("config file loading reports missing files", "[config]") {
  REQUIRE_THROWS_WITH(ExperimentConfig::from_json_file("/nonexistent.json"),
                      ContainsSubstring("cannot open config file"));
}

TEST_CASE("shipped desk preset loads with the documented settings", "[config]") {
  const ExperimentConfig cfg =
      ExperimentConfig::from_json_file(std::string(ALPHADIV_CONFIG_DIR) +
                                       "/desk.json");
  REQUIRE(cfg.pi == 1.0);
  REQUIRE(cfg.replications == 200);
  REQUIRE(cfg.order_alpha == 0.5);
}

TEST_CASE("density spec parser covers the documented grammar", "[spec-parser]") {
  const DensityModel n01 = parse_density_spec("normal(0,1)");
  REQUIRE(n01.gaussian_mean() == 0.0);
  REQUIRE(n01.gaussian_variance() == 1.0);

  const DensityModel shifted = parse_density_spec(" normal( 0.5 , 2.5 ) ");
  REQUIRE(shifted.gaussian_mean() == 0.5);
  REQUIRE(shifted.gaussian_variance() == 2.5);

  const DensityModel m = parse_density_spec("m(0.43)");
  const double expected_at_0 =
      0.43 * 0.39894228040143268 + 0.57 * 0.28209479177387814;
  REQUIRE(m.density(0.0) == Approx(expected_at_0).margin(1e-12));
  REQUIRE(m.variance() == Approx(1.57).margin(1e-12));

  const DensityModel nested =
      parse_density_spec("mixture(0.3, normal(0,1), m(0.5))");
  REQUIRE(nested.mean() == 0.0);
  REQUIRE(nested.density(1.0) > 0.0);

  REQUIRE(parse_density_spec("ar1m1(2)").gaussian_variance() == 2.0);
  REQUIRE(parse_density_spec("ar1m2(1, 0.5)").gaussian_variance() ==
          Approx(8.0 / 3.0).margin(1e-12));
}

TEST_CASE("density spec parser rejects malformed input", "[spec-parser]") {
  REQUIRE_THROWS_WITH(parse_density_spec("norm(0,1)"),
                      ContainsSubstring("bad density spec"));
  REQUIRE_THROWS_WITH(parse_density_spec("normal(0,1"),
                      ContainsSubstring("bad density spec"));
  REQUIRE_THROWS_WITH(parse_density_spec("normal(0,1)x"),
                      ContainsSubstring("bad density spec"));
  REQUIRE_THROWS_AS(parse_density_spec("mixture(2,normal(0,1),normal(0,2))"),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(parse_density_spec(""), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_density_spec("normal(0,-1)"), std::invalid_argument);
}

TEST_CASE("experiment runs produce closed percentages per size", "[experiment]") {
  ExperimentConfig cfg;
  cfg.pi = 1.0;
  cfg.sample_sizes = {50, 100};
  cfg.replications = 30;
  cfg.seed = 99;
  const std::vector<TableRow> rows = run_experiment(cfg);
  REQUIRE(rows.size() == 2);
  REQUIRE(rows[0].n == 50);
  REQUIRE(rows[1].n == 100);
  for (const TableRow& row : rows) {
    REQUIRE(row.pct_model1 + row.pct_model2 + row.pct_indecisive ==
            Approx(100.0).margin(0.01));
    REQUIRE(std::isfinite(row.mean_d1));
    REQUIRE(std::isfinite(row.mean_d2));
    REQUIRE(row.mean_di == Approx(row.mean_d1 - row.mean_d2).margin(1e-12));
  }
}

TEST_CASE("experiment reruns are byte identical", "[experiment]") {
  ExperimentConfig cfg;
  cfg.pi = 0.57;
  cfg.sample_sizes = {50};
  cfg.replications = 20;
  cfg.seed = 123;
  const std::string a = emit_table(run_experiment(cfg), TableFormat::Csv);
  const std::string b = emit_table(run_experiment(cfg), TableFormat::Csv);
  REQUIRE(a == b);
  cfg.seed = 124;
  const std::string c = emit_table(run_experiment(cfg), TableFormat::Csv);
  REQUIRE(a != c);
}

TEST_CASE("csv emission uses the fixed header and six significant digits",
          "[emit]") {
  TableRow row;
  row.n = 20;
  row.mean_d1 = 0.123456789;
  row.mean_d2 = 1234567.0;
  row.mean_di = -0.000123456789;
  row.pct_model1 = 100.0 / 3.0;
  row.pct_model2 = 0.0;
  row.pct_indecisive = 200.0 / 3.0;
  const std::string csv = emit_table({row}, TableFormat::Csv);
  std::istringstream lines(csv);
  std::string header, body;
  std::getline(lines, header);
  std::getline(lines, body);
  REQUIRE(header == "n,mean_d1,mean_d2,mean_di,pct_model1,pct_indecisive,pct_model2");
  REQUIRE(body ==
          "20,0.123457,1.23457e+06,-0.000123457,33.3333,66.6667,0");
  REQUIRE(count_lines(csv) == 2);
}

TEST_CASE("json emission parses back with matching values", "[emit]") {
  TableRow row;
  row.n = 100;
  row.mean_d1 = 0.25;
  row.mean_d2 = 0.5;
  row.mean_di = -0.25;
  row.pct_model1 = 12.5;
  row.pct_model2 = 37.5;
  row.pct_indecisive = 50.0;
  TableRow row2 = row;
  row2.n = 200;
  const std::string text = emit_table({row, row2}, TableFormat::Json);
  const nlohmann::json parsed = nlohmann::json::parse(text);
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 2);
  REQUIRE(parsed[0]["n"] == 100);
  REQUIRE(parsed[1]["n"] == 200);
  REQUIRE(parsed[0]["mean_d1"].get<double>() == Approx(0.25));
  REQUIRE(parsed[0]["pct_indecisive"].get<double>() == Approx(50.0));
}

TEST_CASE("emitting an empty table is an error", "[emit]") {
  REQUIRE_THROWS_WITH(emit_table({}, TableFormat::Csv), ContainsSubstring("no rows"));
}

TEST_CASE("figure data blocks have the documented shape", "[figure]") {
  ExperimentConfig cfg;
  cfg.pi = 1.0;
  cfg.sample_sizes = {50, 100};
  cfg.replications = 5;
  cfg.seed = 42;
  const std::string text = emit_figure_data(cfg, 100);
  REQUIRE(text.rfind("block,a,b,c\n", 0) == 0);

  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  std::size_t hist = 0, curve = 0, series = 0, total_count = 0;
  double curve_max_b = 0.0;
  while (std::getline(lines, line)) {
    if (line.rfind("hist,", 0) == 0) {
      ++hist;
      total_count += std::stoul(line.substr(line.rfind(',') + 1));
    } else if (line.rfind("curve,", 0) == 0) {
      ++curve;
      const std::size_t c1 = line.find(',');
      const std::size_t c2 = line.find(',', c1 + 1);
      const std::size_t c3 = line.find(',', c2 + 1);
      curve_max_b = std::max(curve_max_b,
                             std::stod(line.substr(c2 + 1, c3 - c2 - 1)));
    } else if (line.rfind("series,", 0) == 0) {
      ++series;
    } else {
      FAIL("unknown block label in: " + line);
    }
  }
  REQUIRE(hist == 32);
  REQUIRE(curve == 512);
  REQUIRE(series == cfg.sample_sizes.size());
  REQUIRE(total_count == 100);
  REQUIRE(curve_max_b == Approx(0.3989).margin(0.01));
  REQUIRE(emit_figure_data(cfg, 100) == text);
}
