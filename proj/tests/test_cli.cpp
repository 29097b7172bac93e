#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

using Catch::Approx;

namespace {

struct CmdResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CmdResult run_cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const std::string tag = std::to_string(++counter);
  const std::string out_path = "/tmp/alphadiv_cli_out_" + tag;
  const std::string err_path = "/tmp/alphadiv_cli_err_" + tag;
  const std::string cmd = env + (env.empty() ? "" : " ") + ALPHADIV_CLI_PATH +
                          " " + args + " >" + out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  CmdResult res;
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  res.out = slurp(out_path);
  res.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return res;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += (c == '\n');
  return n;
}

}  // namespace

TEST_CASE("running without a subcommand fails with usage exit code", "[cli]") {
  const CmdResult res = run_cli("");
  REQUIRE(res.code == 2);
}

TEST_CASE("help lists the subcommands", "[cli]") {
  const CmdResult res = run_cli("--help");
  REQUIRE(res.code == 0);
  REQUIRE(res.out.find("experiment") != std::string::npos);
  REQUIRE(res.out.find("divergence") != std::string::npos);
  REQUIRE(res.out.find("ar1-sim") != std::string::npos);
  REQUIRE(res.out.find("figure") != std::string::npos);
}

TEST_CASE("divergence subcommand emits parseable json", "[cli]") {
  const CmdResult res = run_cli(
      "divergence --dgp 'normal(0,1)' --model 'normal(0,1)' --n 200 "
      "--alpha 0.5 --seed 7");
  REQUIRE(res.code == 0);
  const nlohmann::json j = nlohmann::json::parse(res.out);
  REQUIRE(j["kind"] == "alpha");
  REQUIRE(j["alpha"].get<double>() == 0.5);
  REQUIRE(j["n"] == 200);
  REQUIRE(j["seed"] == 7);
  REQUIRE(std::abs(j["value"].get<double>()) < 0.2);
  REQUIRE(j["bandwidth"].get<double>() > 0.0);
  REQUIRE(j["grid"]["points"] == 8193);
}

TEST_CASE("divergence output is reproducible for a fixed seed", "[cli]") {
  const std::string args =
      "divergence --dgp 'normal(0,1)' --model 'normal(0,2)' --n 100 --seed 5";
  const CmdResult a = run_cli(args);
  const CmdResult b = run_cli(args);
  REQUIRE(a.code == 0);
  REQUIRE(a.out == b.out);
}

TEST_CASE("seed environment variable overrides the flag", "[cli]") {
  const std::string args =
      "divergence --dgp 'normal(0,1)' --model 'normal(0,2)' --n 100 --seed 5";
  const CmdResult flag_seed = run_cli(args);
  const CmdResult env_seed = run_cli(args, "ALPHADIV_SEED=123");
  REQUIRE(env_seed.code == 0);
  const nlohmann::json j = nlohmann::json::parse(env_seed.out);
  REQUIRE(j["seed"] == 123);
  REQUIRE(flag_seed.out != env_seed.out);
}

TEST_CASE("a malformed seed environment variable is a usage error", "[cli]") {
  const CmdResult res = run_cli(
      "divergence --dgp 'normal(0,1)' --model 'normal(0,2)' --n 100",
      "ALPHADIV_SEED=abc");
  REQUIRE(res.code == 2);
  REQUIRE(res.err.find("ALPHADIV_SEED") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2", "[cli]") {
  REQUIRE(run_cli("divergence --dgp 'normal(0,1)' --model 'normal(0,1)' "
                  "--n 100 --alpha 1.0")
              .code == 2);
  REQUIRE(run_cli("divergence --dgp 'zeta(1)' --model 'normal(0,1)' --n 100")
              .code == 2);
  REQUIRE(run_cli("divergence --dgp 'normal(0,1)' --model 'normal(0,1)' --n 1")
              .code == 2);
  REQUIRE(run_cli("experiment --config /nonexistent.json").code == 2);
  REQUIRE(run_cli("experiment").code == 2);
  REQUIRE(run_cli("bogus-subcommand").code == 2);
}

TEST_CASE("numerical failures exit with code 3", "[cli]") {
  const CmdResult res = run_cli(
      "divergence --dgp 'normal(0,9)' --model 'normal(0,0.01)' --n 200 "
      "--alpha 2 --alpha-unchecked --seed 3");
  REQUIRE(res.code == 3);
  REQUIRE(res.err.find("numerical failure") != std::string::npos);
  REQUIRE(res.err.find("integral diverged") != std::string::npos);
}

TEST_CASE("narrow grids trigger a boundary warning on stderr", "[cli]") {
  const CmdResult res = run_cli(
      "divergence --dgp 'normal(0,1)' --model 'normal(0,2)' --n 200 --seed 7 "
      "--grid-lo -2 --grid-hi 2 --grid-points 257");
  REQUIRE(res.code == 0);
  REQUIRE(res.err.find("boundary") != std::string::npos);
}

TEST_CASE("ar1-sim emits a path as csv", "[cli]") {
  const CmdResult res = run_cli("ar1-sim --phi 1 --n 50 --seed 3");
  REQUIRE(res.code == 0);
  REQUIRE(res.out.rfind("t,x\n", 0) == 0);
  REQUIRE(count_lines(res.out) == 52);
  const CmdResult again = run_cli("ar1-sim --phi 1 --n 50 --seed 3");
  REQUIRE(again.out == res.out);
}

TEST_CASE("ar1-sim selection reports a decision", "[cli]") {
  const CmdResult res =
      run_cli("ar1-sim --phi 0.5 --n 400 --sigma2 1 --seed 5 --select");
  REQUIRE(res.code == 0);
  const nlohmann::json j = nlohmann::json::parse(res.out);
  const std::string decision = j["decision"].get<std::string>();
  REQUIRE((decision == "Model1" || decision == "Model2" ||
           decision == "Indecisive"));
  REQUIRE(j["phi2"].get<double>() == 0.5);
  REQUIRE(j["n"] == 400);
  REQUIRE(j["di_raw"].get<double>() ==
          Approx(j["d1"].get<double>() - j["d2"].get<double>()).margin(1e-9));
}

TEST_CASE("ar1-sim at the unit root needs an explicit stationary phi", "[cli]") {
  const CmdResult bad = run_cli("ar1-sim --phi 1 --n 100 --seed 2 --select");
  REQUIRE(bad.code == 2);
  REQUIRE(bad.err.find("stationarity violated") != std::string::npos);
  const CmdResult good =
      run_cli("ar1-sim --phi 1 --n 100 --seed 2 --select --phi2 0.5");
  REQUIRE(good.code == 0);
  const nlohmann::json j = nlohmann::json::parse(good.out);
  REQUIRE(j["phi"].get<double>() == 1.0);
  REQUIRE(j["phi2"].get<double>() == 0.5);
}

TEST_CASE("figure writes the block csv to a file", "[cli]") {
  const std::string path = "/tmp/alphadiv_cli_figure.csv";
  const CmdResult res =
      run_cli("figure --pi 1 --n 100 --seed 7 --out " + path);
  REQUIRE(res.code == 0);
  const std::string text = slurp(path);
  std::remove(path.c_str());
  REQUIRE(text.rfind("block,a,b,c\n", 0) == 0);
  REQUIRE(count_lines(text) == 1 + 32 + 512 + 7);
}

TEST_CASE("experiment honors config, overrides, and output formats", "[cli]") {
  const std::string cfg_path = "/tmp/alphadiv_cli_cfg.json";
  {
    std::ofstream cfg(cfg_path);
    cfg << "{\"pi\": 1.0, \"sample_sizes\": [50, 100], \"replications\": 5, "
           "\"seed\": 3}\n";
  }
  const CmdResult csv = run_cli("experiment --config " + cfg_path);
  REQUIRE(csv.code == 0);
  REQUIRE(csv.out.rfind(
              "n,mean_d1,mean_d2,mean_di,pct_model1,pct_indecisive,pct_model2\n",
              0) == 0);
  REQUIRE(count_lines(csv.out) == 3);

  const CmdResult json_fmt =
      run_cli("experiment --config " + cfg_path + " --format json");
  REQUIRE(json_fmt.code == 0);
  const nlohmann::json rows = nlohmann::json::parse(json_fmt.out);
  REQUIRE(rows.is_array());
  REQUIRE(rows.size() == 2);
  REQUIRE(rows[0]["n"] == 50);

  const CmdResult fewer =
      run_cli("experiment --config " + cfg_path + " --reps 3");
  REQUIRE(fewer.code == 0);
  REQUIRE(fewer.out != csv.out);

  const std::string out_path = "/tmp/alphadiv_cli_table.csv";
  const CmdResult to_file =
      run_cli("experiment --config " + cfg_path + " --out " + out_path);
  REQUIRE(to_file.code == 0);
  REQUIRE(slurp(out_path) == csv.out);
  std::remove(out_path.c_str());

  REQUIRE(run_cli("experiment --config " + cfg_path + " --format yaml").code ==
          2);
  std::remove(cfg_path.c_str());
}
