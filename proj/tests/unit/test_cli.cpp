// Copyright 2026 The epsense Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "epsense/cli/commands.hpp"
#include "epsense/cli/config.hpp"
#include "epsense/cli/csv.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace epsense::cli;
using json = nlohmann::json;

namespace {

class Workdir {
 public:
  explicit Workdir(const std::string& name) : path_(fs::temp_directory_path() / ("epsense_cli_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~Workdir() { fs::remove_all(path_); }
  std::string operator/(const std::string& file) const { return (path_ / file).string(); }

 private:
  fs::path path_;
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

double num(const std::string& field) { return field.empty() ? NAN : std::stod(field); }

}  // namespace

TEST_CASE("print-defaults emits a loadable config") {
  const Result r = cli({"--print-defaults"});
  REQUIRE(r.code == kExitOk);
  RunConfig cfg;
  apply_json(cfg, r.out);
  CHECK(cfg.omega == 1.2325);
  CHECK(cfg.shots == 3000);
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli({}).code == kExitConfig);
  CHECK(cli({"frobnicate"}).code == kExitConfig);
  CHECK(cli({"spectrum", "--bogus"}).code == kExitConfig);
  CHECK(cli({"spectrum", "--format", "xml"}).code == kExitConfig);
  CHECK(cli({"spectrum", "--kappa-q", "-1"}).code == kExitConfig);
  CHECK(cli({"evolve", "--n-points", "0"}).code == kExitConfig);
}

TEST_CASE("spectrum over the default grid") {
  Workdir dir("spectrum");
  REQUIRE(cli({"spectrum", "--out", dir / "s.csv", "--plot"}).code == kExitOk);
  const CsvTable t = parse_csv(slurp(dir / "s.csv"));
  CHECK(t.header == std::vector<std::string>{"omega", "delta_omega", "re_E", "im_E", "S_theory"});
  REQUIRE(t.rows.size() == 201);
  CHECK(fs::exists(dir / "s.svg"));

  // S grows toward the EP from both sides.
  const std::size_t s = t.column("S_theory");
  const std::size_t d = t.column("delta_omega");
  for (std::size_t i = 2; i < t.rows.size(); ++i) {
    const double prev = num(t.rows[i - 1][s]);
    const double cur = num(t.rows[i][s]);
    if (num(t.rows[i][d]) < 0.0) {
      CHECK(cur > prev);
    } else if (num(t.rows[i - 1][d]) > 0.0) {
      CHECK(cur < prev);
    }
  }
}

TEST_CASE("spectrum at the EP leaves S empty") {
  Workdir dir("spectrum_ep");
  REQUIRE(cli({"spectrum", "--omega-min", "1.2325", "--omega-max", "1.2325", "--omega-count", "1",
               "--out", dir / "ep.csv"})
              .code == kExitOk);
  const CsvTable t = parse_csv(slurp(dir / "ep.csv"));
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0][4].empty());
}

TEST_CASE("spectrum log-log slope near the EP is -1/2") {
  Workdir dir("spectrum_slope");
  REQUIRE(cli({"spectrum", "--omega-min", "1.2330", "--omega-max", "1.2450", "--omega-count", "25",
               "--out", dir / "s.csv"})
              .code == kExitOk);
  const CsvTable t = parse_csv(slurp(dir / "s.csv"));
  const auto& a = t.rows.front();
  const auto& b = t.rows[5];
  const double slope = std::log(num(b[4]) / num(a[4])) / std::log(num(b[1]) / num(a[1]));
  CHECK(slope == doctest::Approx(-0.5).epsilon(0.01));
}

TEST_CASE("spectrum json format") {
  Workdir dir("spectrum_json");
  REQUIRE(cli({"spectrum", "--omega-count", "3", "--format", "json", "--out", dir / "s.json"}).code ==
          kExitOk);
  const json j = json::parse(slurp(dir / "s.json"));
  CHECK(j["schema_version"] == 1);
  CHECK(j["rows"].size() == 3);
}

TEST_CASE("unwritable output exits 3") {
  CHECK(cli({"spectrum", "--out", "/nonexistent-dir/x.csv"}).code == kExitIo);
  CHECK(cli({"spectrum", "--config", "/nonexistent-dir/c.json"}).code == kExitIo);
}

TEST_CASE("evolve traces") {
  Workdir dir("evolve");
  REQUIRE(cli({"evolve", "--out", dir / "e.csv"}).code == kExitOk);
  const CsvTable t = parse_csv(slurp(dir / "e.csv"));
  CHECK(t.header ==
        std::vector<std::string>{"t", "p_e0", "p_g1", "p_g0", "cond_p_e", "cond_p_g1", "survival"});
  const std::vector<double> first{0, 1, 0, 0, 1, 0, 1};
  for (std::size_t c = 0; c < first.size(); ++c) CHECK(num(t.rows[0][c]) == first[c]);
  // t = 1 sits at index 40 of the 81-point grid on [0, 2].
  CHECK(num(t.rows[40][0]) == 1.0);
  CHECK(num(t.rows[40][4]) == doctest::Approx(0.7664108917).epsilon(1e-9));
  CHECK(num(t.rows[40][1]) == doctest::Approx(0.39504487).epsilon(1e-6));
}

TEST_CASE("evolve without dissipation keeps survival at 1") {
  Workdir dir("evolve_closed");
  REQUIRE(cli({"evolve", "--kappa-q", "0", "--kappa-p", "0", "--out", dir / "e.csv"}).code == kExitOk);
  const CsvTable t = parse_csv(slurp(dir / "e.csv"));
  for (const auto& row : t.rows) CHECK(num(row[6]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("trajectories output is independent of the worker count") {
  Workdir dir("traj");
  const std::vector<std::string> base{"trajectories", "--n-traj", "5000", "--seed", "11"};
  auto with = [&](const std::string& workers, const std::string& out) {
    auto args = base;
    args.insert(args.end(), {"--workers", workers, "--out", dir / out});
    return cli(args).code;
  };
  REQUIRE(with("1", "a.csv") == kExitOk);
  REQUIRE(with("3", "b.csv") == kExitOk);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(slurp(dir / "a.summary.json") == slurp(dir / "b.summary.json"));
}

TEST_CASE("single trajectory") {
  Workdir dir("traj_one");
  REQUIRE(cli({"trajectories", "--n-traj", "1", "--out", dir / "t.csv"}).code == kExitOk);
  const CsvTable t = parse_csv(slurp(dir / "t.csv"));
  for (const auto& row : t.rows) {
    const double s = num(row[t.column("survival")]);
    CHECK((s == 0.0 || s == 1.0));
  }
}

TEST_CASE("trajectory survival agrees with the no-jump norm") {
  Workdir dir("traj_big");
  REQUIRE(cli({"trajectories", "--n-traj", "100000", "--n-points", "11", "--out", dir / "t.csv"})
              .code == kExitOk);
  const json s = json::parse(slurp(dir / "t.summary.json"));
  CHECK(s["schema_version"] == 1);
  CHECK(s["z_survival"].size() == 11);
  CHECK(s["max_abs_z_survival"].get<double>() <= 3.0);
}

TEST_CASE("sense report layout and determinism") {
  Workdir dir("sense");
  REQUIRE(cli({"sense", "--seed", "7", "--out", dir / "a", "--plot"}).code != kExitConfig);
  REQUIRE(cli({"sense", "--seed", "7", "--out", dir / "b"}).code != kExitConfig);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(fs::exists(dir / "a.svg"));
  CHECK_FALSE(fs::exists(dir / "b.svg"));

  const json j = json::parse(slurp(dir / "a.json"));
  CHECK(j["schema_version"] == 1);
  REQUIRE(j["points"].size() == 16);
  for (const char* key : {"omega", "delta_omega", "re_E", "im_E", "S", "rss", "converged"}) {
    CHECK(j["points"][0].contains(key));
  }
  REQUIRE(j["power_laws"].size() == 2);
  for (const char* key : {"side", "A", "B", "stderr_A", "stderr_B"}) {
    CHECK(j["power_laws"][0].contains(key));
  }
  const CsvTable t = parse_csv(slurp(dir / "a.csv"));
  CHECK(t.header[0] == "abs_rel_delta_omega");
  CHECK(t.header[1] == "S");
}

TEST_CASE("sense with two points per side exits 4 and still writes the report") {
  Workdir dir("sense_short");
  const Result r = cli({"sense", "--omegas", "1.0,1.1,1.4,1.6", "--out", dir / "r"});
  CHECK(r.code == kExitFit);
  const json j = json::parse(slurp(dir / "r.json"));
  REQUIRE(j["power_laws"].size() == 2);
  CHECK(j["power_laws"][0]["error"].get<std::string>().find("InsufficientPoints") !=
        std::string::npos);
}

TEST_CASE("sense rejects the EP") {
  Workdir dir("sense_ep");
  CHECK(cli({"sense", "--omegas", "1.0,1.2325", "--out", dir / "r"}).code == kExitConfig);
}

TEST_CASE("flags override the config file") {
  Workdir dir("precedence");
  spit(dir / "c.json", R"({"omega_count": 5, "omega_max": 2.0, "seed": 3})");
  REQUIRE(cli({"spectrum", "--config", dir / "c.json", "--omega-count", "4", "--out", dir / "s.csv"})
              .code == kExitOk);
  const CsvTable t = parse_csv(slurp(dir / "s.csv"));
  REQUIRE(t.rows.size() == 4);
  CHECK(num(t.rows.back()[0]) == 2.0);

  spit(dir / "bad.json", R"({"unknown_key": 1})");
  CHECK(cli({"spectrum", "--config", dir / "bad.json"}).code == kExitConfig);
}

TEST_CASE("plot command") {
  Workdir dir("plot");
  spit(dir / "d.csv", "x,y,z\n1,1,2\n2,4,3\n");
  REQUIRE(cli({"plot", dir / "d.csv", "--x", "x", "--y", "y,z", "--loglog", "--out", dir / "p.svg"})
              .code == kExitOk);
  const std::string svg = slurp(dir / "p.svg");
  CHECK(svg.find("<polyline") != std::string::npos);

  spit(dir / "empty.csv", "x,y\n");
  CHECK(cli({"plot", dir / "empty.csv", "--x", "x", "--y", "y", "--out", dir / "e.svg"}).code ==
        kExitConfig);
  spit(dir / "ragged.csv", "x,y\n1\n");
  CHECK(cli({"plot", dir / "ragged.csv", "--x", "x", "--y", "y", "--out", dir / "r.svg"}).code ==
        kExitConfig);
  CHECK(cli({"plot", dir / "d.csv", "--x", "x", "--y", "w", "--out", dir / "w.svg"}).code ==
        kExitConfig);
  CHECK(cli({"plot", dir / "missing.csv", "--x", "x", "--y", "y"}).code == kExitIo);
}
