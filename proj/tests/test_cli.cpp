// Copyright 2026 The Holonomic Gates Authors
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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "holo/cli.hpp"
#include "json.hpp"

namespace holo {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliRun {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("holo_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

double table_entry(const json& doc, int k, int j) { return doc["probability_table"][k][j].get<double>(); }

TEST_F(CliTest, GateHadamardTable) {
  const CliRun r = run({"gate", "--theta", "2.35619449019", "--phi", "0", "--envelope", "sandwich"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = r.doc();
  for (int k = 0; k < 2; ++k) {
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(table_entry(doc, k, j), 0.5, 1e-6);
  }
  EXPECT_EQ(doc["command"], "gate");
  EXPECT_EQ(doc["config"]["global"]["seed"], 20240607);
  EXPECT_NEAR(doc["fidelity"].get<double>(), 1.0, 1e-9);
}

TEST_F(CliTest, GateNotTable) {
  const CliRun r = run({"gate", "--theta", "1.5708"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = r.doc();
  EXPECT_NEAR(table_entry(doc, 0, 1), 1.0, 1e-6);
  EXPECT_NEAR(table_entry(doc, 1, 0), 1.0, 1e-6);
  EXPECT_NEAR(table_entry(doc, 0, 0), 0.0, 1e-6);
}

TEST_F(CliTest, GateZeroThetaHasMinusSign) {
  const CliRun r = run({"gate", "--theta", "0", "--samples-per-cm", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = r.doc();
  EXPECT_NEAR(table_entry(doc, 0, 0), 1.0, 1e-9);
  EXPECT_NEAR(table_entry(doc, 1, 1), 1.0, 1e-9);
  EXPECT_NEAR(doc["simulated_unitary"][2][2][0].get<double>(), -1.0, 1e-9);
  EXPECT_NEAR(doc["simulated_unitary"][0][0][0].get<double>(), 1.0, 1e-9);
}

TEST_F(CliTest, DegreesFlag) {
  const CliRun r = run({"--degrees", "gate", "--theta", "90", "--samples-per-cm", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(table_entry(r.doc(), 0, 1), 1.0, 1e-9);
}

TEST_F(CliTest, CsvFormat) {
  const CliRun r = run({"gate", "--theta", "1.0", "--format", "csv", "--samples-per-cm", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "input,output,probability");
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({"gate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"teleport"}).code, 2);
  EXPECT_EQ(run({"gate", "--theta", "abc"}).code, 2);
  EXPECT_EQ(run({"gate", "--theta", "1", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"gate", "--theta", "1", "--envelope", "box"}).code, 2);
  EXPECT_EQ(run({"gate", "--theta", "1", "--method", "euler"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, ComputationErrors) {
  const CliRun r = run({"gate", "--theta", "1", "--steps", "10"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, ShowConfig) {
  const CliRun r = run({"robustness", "--theta", "1", "--seed", "5", "--show-config"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = r.doc();
  EXPECT_EQ(doc["global"]["seed"], 5);
  EXPECT_EQ(doc["perturbation"], "weight");
  EXPECT_EQ(doc["trials"], 100);
  EXPECT_EQ(doc["command"], "robustness");
}

TEST_F(CliTest, OutWritesFile) {
  const std::string path = (dir_ / "report.json").string();
  const CliRun r = run({"gate", "--theta", "1", "--samples-per-cm", "100", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  EXPECT_NO_THROW(json::parse(in));
}

TEST_F(CliTest, SequenceFlipBranch) {
  const std::string file = write("flip.json",
                                 R"([{"type": "gate", "theta": 2.356194490192345, "length": 1},
                                     {"type": "gate", "theta": 1.5707963267948966, "length": 1},
                                     {"type": "gate", "theta": 2.356194490192345, "length": 1}])");
  const CliRun r = run({"sequence", file, "--samples-per-cm", "300"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = r.doc();
  EXPECT_NEAR(doc["sequences"][0]["q_win_probability"].get<double>(), 1.0, 1e-6);
  EXPECT_EQ(doc["sequences"][0]["elements"].size(), 3u);
  EXPECT_LT(doc["sequences"][0]["max_block_error"].get<double>(), 1e-6);
}

TEST_F(CliTest, SequenceCommutatorPair) {
  const std::string h = R"({"type": "gate", "theta": 2.356194490192345, "length": 1})";
  const std::string x = R"({"type": "gate", "theta": 1.5707963267948966, "length": 1})";
  const std::string a = write("hxh.json", "[" + h + "," + x + "," + h + "]");
  const std::string b = write("xhh.json", "[" + x + "," + h + "," + h + "]");
  const CliRun r = run({"sequence", a, b, "--samples-per-cm", "300"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.doc()["max_difference"].get<double>(), 1.0, 1e-6);
}

TEST_F(CliTest, SequenceEmptyIsUsageError) {
  EXPECT_EQ(run({"sequence", write("empty.json", "[]")}).code, 2);
  EXPECT_EQ(run({"sequence", write("blank.json", "")}).code, 2);
  EXPECT_EQ(run({"sequence", (dir_ / "missing.json").string()}).code, 2);
}

TEST_F(CliTest, Commutator) {
  const CliRun r = run({"commutator", "--length", "1", "--samples-per-cm", "300"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = r.doc();
  EXPECT_NEAR(doc["max_difference"].get<double>(), 1.0, 1e-6);
  EXPECT_NEAR(doc["probability_table_hxh"][0][0].get<double>(), 1.0, 1e-6);
  EXPECT_NEAR(doc["probability_table_xhh"][0][1].get<double>(), 1.0, 1e-6);
}

TEST_F(CliTest, Game) {
  const CliRun r = run({"game", "--length", "1", "--samples-per-cm", "300"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = r.doc();
  for (const char* branch : {"flip", "no_flip"}) {
    EXPECT_NEAR(doc["branches"][branch]["q_win_probability"].get<double>(), 1.0, 1e-6);
    EXPECT_GE(doc["branches"][branch]["simulated_q_win"].get<double>(), 0.97);
  }
}

TEST_F(CliTest, LayoutPauliXIsMirrored) {
  const CliRun r = run({"layout", "--theta", "1.5707963267948966", "--a", "20", "--b", "0.2",
                     "--samples-per-cm", "100", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "z_mm,x_L_um,x_C_um,x_R_um,segment");
  int rows = 0;
  while (std::getline(in, line)) {
    std::stringstream s(line);
    std::string z, l, c, rr;
    std::getline(s, z, ',');
    std::getline(s, l, ',');
    std::getline(s, c, ',');
    std::getline(s, rr, ',');
    EXPECT_NEAR(std::stod(l), -std::stod(rr), 1e-9);
    ++rows;
  }
  EXPECT_EQ(rows, 201);
}

TEST_F(CliTest, LayoutEchoesScanFit) {
  std::ostringstream scan;
  scan.precision(17);
  scan << "delta_um,kappa_per_cm\n";
  for (double d = 8.0; d <= 24.0; d += 4.0) scan << d << ',' << 15.0 * std::exp(-0.18 * d) << '\n';
  const std::string file = write("scan.csv", scan.str());
  const CliRun r = run({"layout", "--theta", "1.5707963267948966", "--scan", file, "--samples-per-cm", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = r.doc();
  EXPECT_NEAR(doc["metadata"]["fit"]["a_per_cm"].get<double>(), 15.0, 1e-9);
  EXPECT_NEAR(doc["metadata"]["fit"]["b_per_um"].get<double>(), 0.18, 1e-11);

  const CliRun fit = run({"fit", "--scan", file});
  ASSERT_EQ(fit.code, 0) << fit.err;
  EXPECT_NEAR(fit.doc()["fit"]["a_per_cm"].get<double>(), 15.0, 1e-9);
}

TEST_F(CliTest, LayoutCouplingAboveFitFails) {
  const CliRun r = run({"layout", "--theta", "1.5707963267948966", "--a", "1", "--b", "0.2",
                     "--samples-per-cm", "50"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("exceeds"), std::string::npos);
}

TEST_F(CliTest, LayoutSequenceWithFanning) {
  const std::string file = write("seq.json", R"([{"theta": 1.5707963267948966, "length": 1},
                                                 {"type": "inert", "length": 0.5}])");
  const CliRun r = run({"layout", "--sequence", file, "--fanning", "--samples-per-cm", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = r.doc();
  EXPECT_EQ(doc["points"][0]["segment"], "fanning");
  EXPECT_DOUBLE_EQ(doc["points"][0]["x_L_um"].get<double>(), -82.0);
  bool decoupled = false;
  for (const auto& p : doc["points"]) decoupled = decoupled || p["segment"] == "decoupled";
  EXPECT_TRUE(decoupled);
}

TEST_F(CliTest, LayoutComplexPhaseFails) {
  EXPECT_EQ(run({"layout", "--theta", "1", "--phi", "0.5", "--samples-per-cm", "50"}).code, 1);
}

TEST_F(CliTest, HomHadamard) {
  const CliRun r = run({"hom", "--theta", "2.356194490192345", "--samples-per-cm", "200"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = r.doc();
  EXPECT_NEAR(doc["visibility"].get<double>(), 1.0, 1e-9);
  EXPECT_DOUBLE_EQ(doc["experimental_reference"]["visibility"].get<double>(), 0.95);
  EXPECT_DOUBLE_EQ(doc["experimental_reference"]["uncertainty"].get<double>(), 0.046);
  EXPECT_NEAR(doc["curve"][0]["coincidence"].get<double>(), 0.5, 1e-9);
  EXPECT_EQ(doc["curve"].size(), 5u);
}

TEST_F(CliTest, HomIdentityAndBadGrid) {
  const CliRun r = run({"hom", "--theta", "0", "--samples-per-cm", "100", "--q-grid", "0,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.doc()["visibility"].get<double>(), 0.0, 1e-9);
  EXPECT_EQ(run({"hom", "--theta", "1", "--q-grid", "0,x"}).code, 2);
  EXPECT_EQ(run({"hom", "--theta", "1", "--q-grid", "0,1.5"}).code, 2);
  EXPECT_EQ(run({"hom", "--theta", "1", "--q-grid", ""}).code, 2);
}

TEST_F(CliTest, RobustnessIsByteIdentical) {
  const std::vector<std::string> args{"robustness", "--theta", "2.356194490192345", "--trials", "6",
                                      "--sigma", "0.02", "--length", "1", "--samples-per-cm", "200",
                                      "--seed", "17"};
  const CliRun a = run(args);
  const CliRun b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const json doc = a.doc();
  EXPECT_EQ(doc["summary"]["trials"], 6);
  EXPECT_EQ(doc["config"]["global"]["seed"], 17);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  EXPECT_EQ(json::parse(run(threaded).out)["summary"], doc["summary"]);
  auto reseeded = args;
  reseeded.back() = "18";
  EXPECT_NE(json::parse(run(reseeded).out)["summary"], doc["summary"]);
}

TEST_F(CliTest, RobustnessWavelength) {
  const CliRun r = run({"robustness", "--theta", "1.5707963267948966", "--perturbation", "wavelength",
                     "--a-sigma", "0.05", "--b-sigma", "0.02", "--preserve-integral", "--trials", "4",
                     "--length", "1", "--samples-per-cm", "200"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.doc()["summary"]["min_fidelity"].get<double>(), 1.0, 1e-9);
}

}  // namespace
}  // namespace holo
