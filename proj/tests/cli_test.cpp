// Copyright 2026 The vmpgen Authors. All Rights Reserved.
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


#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"
#include "test_support.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = vmpcli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

using vmptest::dataPath;

TEST(Cli, EnvsListsSixteen) {
  auto r = cli({"envs"});
  EXPECT_EQ(r.code, 0);
  auto l = lines(r.out);
  ASSERT_EQ(l.size(), 16u);
  EXPECT_EQ(l[0], "(0,0) -");
  EXPECT_EQ(l[6], "(1,2) mS, Unet");
  EXPECT_EQ(l[15], "(3,3) mS, Vcpu, Vram, Ucpu, Uram, Unet");
}

TEST(Cli, ValidateGolden) {
  auto r = cli({"validate", dataPath("golden.vmpt")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0 violations\n");
}

TEST(Cli, ClassifyGolden) {
  auto r = cli({"classify", dataPath("golden.vmpt")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out).at(0), "3,3");
}

TEST(Cli, InvalidTraceExitsTwo) {
  auto dir = vmptest::scratchDir("cli_invalid");
  auto path = (dir / "bad.vmpt").string();
  std::ofstream(path) << "t,sb,dc,vj,vcpu,vram,vnet,r,sla,ucpu,uram,unet\n0,1,1,1,8,16,1000,0.5,1,9,16,1000\n";
  auto v = cli({"validate", path});
  EXPECT_EQ(v.code, 2);
  EXPECT_EQ(lines(v.out).at(0), "1 violations");
  auto c = cli({"classify", path});
  EXPECT_EQ(c.code, 2);
  EXPECT_EQ(c.err.rfind("error code=invalid_trace message=\"", 0), 0u) << c.err;

  std::ofstream(path) << "garbage\n";
  auto g = cli({"classify", path});
  EXPECT_EQ(g.code, 2);
  EXPECT_EQ(g.err.rfind("error code=schema", 0), 0u) << g.err;
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"frobnicate"}).code, 1);
  EXPECT_EQ(cli({"adapt", "--duration", "x", "a", "b"}).code, 1);
  EXPECT_EQ(cli({"simulate", "--trace", dataPath("golden.vmpt"), "--algo", "random"}).code, 1);
  auto missing = cli({"validate", "/nonexistent/t.vmpt"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_EQ(missing.err.rfind("error code=io", 0), 0u);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, GenerateEchoesSeedAndOverrides) {
  auto dir = vmptest::scratchDir("cli_generate");
  auto out = (dir / "g.vmpt").string();
  auto r = cli({"generate", "--config", dataPath("reference.cfg"), "--out", out, "--seed", "12", "--env", "1,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("seed=12 env=1,2 ", 0), 0u) << r.out;
  auto c = cli({"classify", out});
  ASSERT_EQ(c.code, 0);
  auto env = lines(c.out).at(0);
  EXPECT_TRUE(env == "1,2" || env == "0,2" || env == "1,0" || env == "0,0") << env;

  auto bad = cli({"generate", "--config", dataPath("reference.cfg"), "--out", out, "--env", "9,9"});
  EXPECT_EQ(bad.code, 1);
  auto badCfg = cli({"generate", "--config", dataPath("fleet_large.cfg"), "--out", out});
  EXPECT_EQ(badCfg.code, 2);
  EXPECT_EQ(badCfg.err.rfind("error code=unknown_key", 0), 0u) << badCfg.err;
}

TEST(Cli, AdaptAndFitConfig) {
  auto dir = vmptest::scratchDir("cli_adapt");
  auto out = (dir / "a.vmpt").string();
  auto r = cli({"adapt", "--duration", "2", "--seed", "4", dataPath("golden.vmpt"), out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("seed=4 duration=2 rows=9", 0), 0u) << r.out;
  EXPECT_EQ(cli({"adapt", "--duration", "0", "--seed", "4", dataPath("golden.vmpt"), out}).code, 1);

  auto cfg = (dir / "f.cfg").string();
  auto f = cli({"fit-config", dataPath("golden.vmpt"), cfg});
  ASSERT_EQ(f.code, 0) << f.err;
  auto text = vmptest::slurp(cfg);
  EXPECT_NE(text.find("vcpu_min=4\nvcpu_max=8\n"), std::string::npos);
  EXPECT_NE(text.find("environment=3,3"), std::string::npos);
}

TEST(Cli, SimulateWritesCsv) {
  auto dir = vmptest::scratchDir("cli_simulate");
  auto metrics = (dir / "m.csv").string();
  auto log = (dir / "l.csv").string();
  auto r = cli({"simulate", "--trace", dataPath("golden.vmpt"), "--fleet", dataPath("fleet_large.cfg"), "--algo",
                "best-fit", "--out", metrics, "--log", log});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("algo=best-fit revenue=7.5 ", 0), 0u) << r.out;
  EXPECT_EQ(vmptest::slurp(metrics).rfind("metric,value\ntotal_revenue,7.5\n", 0), 0u);
  // Header, 4 arrivals, 2 removals, 2 resizes; the trace ends before service teardown.
  EXPECT_EQ(lines(vmptest::slurp(log)).size(), 1u + 8u);

  auto missingDc = (dir / "one.cfg").string();
  std::ofstream(missingDc) << "datacenters=1\npms=1\npcpu=8\npram=8\npnet=8\n";
  EXPECT_EQ(cli({"simulate", "--trace", dataPath("golden.vmpt"), "--fleet", missingDc}).code, 1);
}

TEST(Cli, PipelineAcrossEnvironments) {
  auto dir = vmptest::scratchDir("cli_pipeline");
  for (int e = 0; e < 4; ++e) {
    for (int o = 0; o < 4; ++o) {
      for (int seed = 0; seed < 3; ++seed) {
        const std::string env = std::to_string(e) + "," + std::to_string(o);
        auto trace = (dir / ("t" + env + "_" + std::to_string(seed) + ".vmpt")).string();
        ASSERT_EQ(cli({"generate", "--config", dataPath("reference.cfg"), "--out", trace, "--seed",
                       std::to_string(seed), "--env", env})
                      .code,
                  0);
        ASSERT_EQ(cli({"validate", trace}).code, 0) << env;
        ASSERT_EQ(cli({"classify", trace}).code, 0) << env;
        ASSERT_EQ(cli({"simulate", "--trace", trace}).code, 0) << env;
      }
    }
  }
}

}  // namespace
