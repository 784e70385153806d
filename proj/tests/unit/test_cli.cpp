// Copyright 2026 The pseudoprob Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "pseudoprob/io.hpp"

using namespace pseudoprob;
using Catch::Matchers::WithinAbs;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data_path(const std::string& rel) {
  const char* root = std::getenv("PSEUDOPROB_DATA");
  return std::string(root ? root : "data") + "/" + rel;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch() {
  const auto dir = std::filesystem::temp_directory_path() / "pseudoprob_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("witness on the Werner family") {
  const Run r = run({"witness", "--family", "werner_local", "--alpha", "-0.6", "--beta", "0",
                     "--kind", "W2"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["detected"] == true);
  CHECK_THAT(j["value"].get<double>(), WithinAbs(-1.2, 1e-12));

  const Run o = run({"witness", "--family", "werner_local", "--alpha", "-0.6", "--kind", "W0",
                     "--optimize"});
  REQUIRE(o.code == 0);
  const Json oj = Json::parse(o.out);
  CHECK(oj["detected"] == false);
  CHECK_THAT(std::abs(oj["value"].get<double>()), WithinAbs(2 * std::sqrt(2.0) * 0.6, 1e-9));
}

TEST_CASE("witness on a state file") {
  const Run r = run({"witness", "--state", data_path("states/singlet.json"), "--kind", "W4"});
  REQUIRE(r.code == 0);
  CHECK_THAT(Json::parse(r.out)["value"].get<double>(), WithinAbs(-3, 1e-12));
}

TEST_CASE("witness with an explicit geometry file") {
  const auto dir = scratch();
  const auto geo = dir / "geometry.json";
  std::ofstream(geo) << R"({"first": [[[1,0,0],[0,1,0]]], "second": [[[1,0,0],[0,1,0]]]})";
  const Run ok = run({"witness", "--family", "werner_local", "--alpha", "-1", "--kind", "W2",
                      "--geometry", geo.string()});
  REQUIRE(ok.code == 0);
  CHECK_THAT(Json::parse(ok.out)["value"].get<double>(), WithinAbs(-2, 1e-12));
  const Run bad = run({"witness", "--family", "werner_local", "--alpha", "-1", "--kind", "W4",
                       "--geometry", geo.string()});
  CHECK(bad.code == 4);
}

TEST_CASE("witness exit codes") {
  CHECK(run({"witness", "--family", "werner_local", "--alpha", "-2", "--kind", "W4"}).code == 3);
  CHECK(run({"witness", "--family", "werner_local", "--kind", "W7"}).code == 2);
  CHECK(run({"witness", "--kind", "W1"}).code == 2);
  CHECK(run({"witness", "--family", "werner_local", "--alpha", "abc", "--kind", "W1"}).code == 2);
  CHECK(run({"witness", "--state", "/nonexistent.json", "--kind", "W1"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("witness output file and manifest") {
  const auto dir = scratch();
  const auto out = dir / "report.json";
  REQUIRE(run({"witness", "--family", "werner_local", "--alpha", "-0.5", "--kind", "W3",
               "--out", out.string()}).code == 0);
  const Json report = Json::parse(slurp(out));
  CHECK_THAT(report["value"].get<double>(), WithinAbs(-1.5, 1e-12));
  const Json manifest = Json::parse(slurp(out.string() + ".manifest.json"));
  CHECK(manifest["command"] == "witness");
  CHECK(manifest["outputs"].size() == 1);
}

TEST_CASE("scheme command") {
  const Run r = run({"scheme", "--subsystem", "A1=1,0,0 A2=0,0,1"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["entries"].size() == 4);
  CHECK(j["identity_residual"].get<double>() < 1e-12);
  for (const auto& m : j["marginal_residuals"]) CHECK(m["residual"].get<double>() < 1e-12);

  const double s = 1.0 / std::sqrt(2.0);
  const std::string bloch = format_float(s) + ",0," + format_float(-s);
  const Run st = run({"scheme", "--subsystem", "A1=1,0,0 A2=0,0,1", "--bloch", bloch});
  REQUIRE(st.code == 0);
  const Json sj = Json::parse(st.out);
  CHECK_THAT(sj["pseudo_probability_sum"].get<double>(), WithinAbs(1.0, 1e-12));
  bool flagged = false;
  for (const auto& e : sj["entries"]) flagged = flagged || e["nonclassical"].get<bool>();
  CHECK(flagged);

  const Run two = run({"scheme", "--subsystem", "A1=1,0,0 A2=0,0,1", "--subsystem", "B1=1,0,1 B2=1,0,-1",
                       "--state", data_path("states/singlet.json")});
  REQUIRE(two.code == 0);
  CHECK(Json::parse(two.out)["entries"].size() == 16);

  CHECK(run({"scheme", "--subsystem", "A=1,0,0 B=0,1,0 C=0,0,1 D=1,1,0 E=1,0,1"}).code == 4);
  CHECK(run({"scheme", "--subsystem", "A=1,0"}).code == 2);
}

TEST_CASE("region-scan command") {
  const auto dir = scratch();
  const auto out = dir / "slice.csv";
  const Run r = run({"region-scan", "--t3", "0.5", "--step", "0.01", "--out", out.string()});
  REQUIRE(r.code == 0);
  const Json summary = Json::parse(r.out);
  CHECK(summary["only_W2"].get<int>() > 0);
  CHECK(summary["only_W3"].get<int>() > 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("t1,t2,t3,physical,W1,W2,W3,W4\n", 0) == 0);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    if (line.find(",0,") != std::string::npos && line.substr(line.size() - 10, 2) == "0,") {
      CHECK(line.substr(line.size() - 8) == "0,0,0,0");
    }
  }
  CHECK(std::filesystem::exists(out.string() + ".manifest.json"));

  const std::string first = csv;
  REQUIRE(run({"region-scan", "--t3", "0.5", "--step", "0.01", "--out", out.string()}).code == 0);
  CHECK(slurp(out) == first);

  CHECK(run({"region-scan", "--t3", "0.5", "--step", "0.6"}).code == 2);
  CHECK(run({"region-scan", "--t3", "0.5", "--step", "0.0001"}).code == 2);
}

TEST_CASE("region-scan at t3 = 0 is symmetric under t1 <-> t2") {
  const Run r = run({"region-scan", "--t3", "0", "--step", "0.05"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  std::vector<std::string> rows;
  std::vector<std::string> swapped;
  while (std::getline(lines, line)) {
    rows.push_back(line);
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    swapped.push_back(line.substr(c1 + 1, c2 - c1 - 1) + "," + line.substr(0, c1) +
                      line.substr(c2));
  }
  std::sort(rows.begin(), rows.end());
  std::sort(swapped.begin(), swapped.end());
  CHECK(rows == swapped);
}

TEST_CASE("werner-sweep command") {
  const auto dir = scratch();
  const auto out = dir / "sweep.csv";
  const Run r = run({"werner-sweep", "--beta", "0", "--alpha-min", "-1", "--alpha-max", "0",
                     "--step", "0.01", "--out", out.string()});
  REQUIRE(r.code == 0);
  const Json b = Json::parse(r.out);
  CHECK_THAT(b["W4"].get<double>(), WithinAbs(-1.0 / 3, 0.01));
  CHECK_THAT(b["PPT"].get<double>(), WithinAbs(b["W4"].get<double>(), 1e-12));
  const std::string csv = slurp(out);
  CHECK(csv.find("\n0,0,1,0,0,0,0,0,0,0,0,0,0,0\n") != std::string::npos);
  CHECK(std::filesystem::exists(out.string() + ".manifest.json"));
}

TEST_CASE("check-identities command") {
  const Run ok = run({"check-identities", "--seed", "4", "--trials", "10"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  CHECK(run({"check-identities", "--trials", "3", "--perturb", "1e-6"}).code == 1);
  CHECK(run({"check-identities", "--trials", "0"}).code == 2);
}
