// Copyright 2026 The jrsp4 Authors
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


#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "jrsp/cli.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "jrsp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = jrsp::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::string kUniform = "0.5,0.5,0.5,0.5";
const std::string kGeneric1 = "0.1,0.3,0.5,0.806225774829855";
const std::string kGeneric2 = "0.7,-0.2,0.4,0.5567764362830022";

}  // namespace

TEST_CASE("run reports the classical cost") {
  const Result r = cli({"run", "--protocol", "p1", "--share1", kUniform, "--share2", kUniform, "--seed", "7", "--shots",
                        "1000", "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["classical_cost_bits"] == 4);
  CHECK(doc["shots"] == 1000);
  CHECK(doc["seed"] == 7);
  std::uint64_t total = 0;
  for (const auto& [k, v] : doc["empirical_counts"].items()) total += v.get<std::uint64_t>();
  CHECK(total == 1000);
}

TEST_CASE("run is byte-identical across invocations and thread counts") {
  const std::vector<std::string> base{"run", "--protocol", "p3", "--share1", kGeneric1, "--share2", kGeneric2,
                                      "--seed", "11", "--shots", "5000"};
  auto with_threads = base;
  with_threads.insert(with_threads.end(), {"--threads", "4"});
  const Result a = cli(base);
  CHECK(a.code == 0);
  CHECK(a.out == cli(base).out);
  CHECK(a.out == cli(with_threads).out);
}

TEST_CASE("input errors exit 2") {
  const Result bad = cli({"run", "--protocol", "p1", "--share1", "0.5,0.5,0.5,0.6", "--share2", kUniform});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("share not normalized") != std::string::npos);
  CHECK(cli({"tables", "--protocol", "p7"}).code == 2);
  CHECK(cli({"run", "--protocol", "p1", "--share1", kUniform}).code == 2);
  CHECK(cli({"run", "--protocol", "p1", "--share1", kUniform, "--share2", kUniform, "--bogus"}).code == 2);
  CHECK(cli({"enumerate", "--protocol", "p1", "--share1", kUniform, "--share2", kUniform, "--format", "xml"}).code == 2);
  CHECK(cli({"run", "--protocol", "p1", "--share1", kUniform, "--share2", kUniform, "--shots", "0"}).code == 2);
  CHECK(cli({"run", "--protocol", "p1", "--share1", "1,0,0,0", "--share2", "0,1,0,0"}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("enumerate CSV") {
  const Result p1 = cli({"enumerate", "--protocol", "p1", "--share1", kUniform, "--share2", kUniform, "--format", "csv"});
  REQUIRE(p1.code == 0);
  std::istringstream in(p1.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "outcome_key,probability,success,correction,fidelity");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 16);

  const Result p3 = cli({"enumerate", "--protocol", "p3", "--share1", kGeneric1, "--share2", kGeneric2, "--format", "csv"});
  std::istringstream in3(p3.out);
  std::getline(in3, line);
  int n = 0;
  int successes = 0;
  double total = 0.0;
  while (std::getline(in3, line)) {
    // "gh,mn",p,success,...
    const auto close = line.find('"', 1);
    const auto rest = line.substr(close + 2);
    total += std::stod(rest.substr(0, rest.find(',')));
    const auto after = rest.substr(rest.find(',') + 1);
    if (after.rfind("true", 0) == 0) ++successes;
    ++n;
  }
  CHECK(n == 256);
  CHECK(successes == 64);
  CHECK(std::abs(total - 1.0) < 1e-10);
}

TEST_CASE("tables subcommand") {
  const Result p1 = cli({"tables", "--protocol", "p1", "--seed", "3"});
  REQUIRE(p1.code == 0);
  CHECK(json::parse(p1.out)["diff"].empty());
  const Result p2 = cli({"tables", "--protocol", "p2", "--share1", kGeneric1, "--share2", kGeneric2});
  const json d2 = json::parse(p2.out)["diff"];
  REQUIRE(d2.size() == 1);
  CHECK(d2[0]["outcome"] == "01,01");
  CHECK(cli({"tables", "--protocol", "p2", "--strict"}).code == 1);
  CHECK(cli({"tables", "--protocol", "p3", "--strict"}).code == 0);
}

TEST_CASE("verify subcommand") {
  const Result def = cli({"verify"});
  CHECK(def.code == 0);
  CHECK_FALSE(json::parse(def.out)["discrepancies"].empty());
  CHECK(cli({"verify", "--strict"}).code == 1);
  CHECK(cli({"verify", "--seed", "13"}).out == cli({"verify", "--seed", "13", "--threads", "3"}).out);
}

TEST_CASE("--out writes the report to a file") {
  const std::string path = "cli_out_test.json";
  const Result r = cli({"enumerate", "--protocol", "p2", "--share1", kGeneric1, "--share2", kGeneric2, "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream buf;
  buf << f.rdbuf();
  CHECK(json::parse(buf.str())["records"].size() == 256);
  std::remove(path.c_str());
}
