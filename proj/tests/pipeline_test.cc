// Copyright 2026 The reluproof Authors
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

#include "reluproof/pipeline.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracle.h"
#include "reluproof/checker.h"

namespace reluproof {
namespace {

namespace fs = std::filesystem;

const std::string kData = RELUPROOF_DATA_DIR;

std::string Slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("reluproof_pipeline_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(PipelineTest, UnsatFixtureWritesCheckableProof) {
  const Network net = ParseNetwork(kData + "/two_relu.json");
  const PropertySpec p = ParseProperty(kData + "/two_relu_unsat.vnnlib");
  VerifyOptions opts;
  opts.proof_path = Path("p.alethe");
  const VerifyOutcome out = Verify(net, p, opts);
  ASSERT_TRUE(std::holds_alternative<UnsatVerdict>(out.verdict));
  EXPECT_EQ(std::get<UnsatVerdict>(out.verdict).proof_path, *opts.proof_path);
  EXPECT_GT(out.proof_steps, 0);
  const CheckReport r = CheckProofFiles(Path("p.alethe") + ".problem.smt2", Path("p.alethe"));
  EXPECT_EQ(r.verdict, CheckVerdict::kValid) << r.reason;
  EXPECT_EQ(r.steps, out.proof_steps);
}

TEST_F(PipelineTest, SatFixtureWitness) {
  const Network net = ParseNetwork(kData + "/two_relu.json");
  const PropertySpec p = ParseProperty(kData + "/two_relu_sat.vnnlib");
  const VerifyOutcome out = Verify(net, p, VerifyOptions{});
  ASSERT_TRUE(std::holds_alternative<SatVerdict>(out.verdict));
  const RationalVector& x = std::get<SatVerdict>(out.verdict).assignment;
  ASSERT_EQ(x.size(), 2);
  EXPECT_EQ(EvalNetwork(net, x), out.outputs);
  EXPECT_TRUE(OutputsSatisfy(p, out.outputs));
  for (int i = 0; i < 2; ++i) {
    EXPECT_GE(x(i), p.input_lower[i]);
    EXPECT_LE(x(i), p.input_upper[i]);
  }
}

TEST_F(PipelineTest, PreprocessingVerdictHasNoProof) {
  const Network net = ParseNetwork(kData + "/passthrough.json");
  const PropertySpec p = ParseProperty(kData + "/passthrough_unsat.vnnlib");
  VerifyOptions opts;
  opts.proof_path = Path("p.alethe");
  const VerifyOutcome out = Verify(net, p, opts);
  EXPECT_TRUE(std::holds_alternative<UnsatPreprocessingVerdict>(out.verdict));
  EXPECT_FALSE(fs::exists(Path("p.alethe")));
}

TEST_F(PipelineTest, InjectedFaultGivesOneHole) {
  const Network net = ParseNetwork(kData + "/two_relu.json");
  const PropertySpec p = ParseProperty(kData + "/two_relu_unsat.vnnlib");
  VerifyOptions opts;
  opts.proof_path = Path("p.alethe");
  opts.fault_certificates = {1};
  const VerifyOutcome out = Verify(net, p, opts);
  ASSERT_TRUE(std::holds_alternative<UnsatVerdict>(out.verdict));
  EXPECT_EQ(out.stats.holes, 1);
  const CheckReport r = CheckProofFiles(Path("p.alethe") + ".problem.smt2", Path("p.alethe"));
  EXPECT_EQ(r.verdict, CheckVerdict::kHoley) << r.reason;
  EXPECT_EQ(r.holes.size(), 1u);
}

TEST_F(PipelineTest, SequentialProofsAreByteIdentical) {
  const Network net = ParseNetwork(kData + "/two_relu.json");
  const PropertySpec p = ParseProperty(kData + "/two_relu_unsat.vnnlib");
  for (int run = 0; run < 2; ++run) {
    VerifyOptions opts;
    opts.proof_path = Path("p" + std::to_string(run) + ".alethe");
    Verify(net, p, opts);
  }
  const std::string a = Slurp(Path("p0.alethe"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, Slurp(Path("p1.alethe")));
}

TEST_F(PipelineTest, NoCdclNeverChangesVerdicts) {
  std::mt19937_64 rng(77);
  oracle::RandomQuerySpec spec;
  spec.max_relus = 8;
  for (int trial = 0; trial < 30; ++trial) {
    const Network net = oracle::RandomNetwork(rng, spec);
    const PropertySpec p = oracle::RandomProperty(rng, net, spec);
    VerifyOptions with, without;
    with.proof_path = Path("a.alethe");
    without.proof_path = Path("b.alethe");
    without.pdcl = false;
    const VerifyOutcome a = Verify(net, p, with);
    const VerifyOutcome b = Verify(net, p, without);
    ASSERT_EQ(a.verdict.index(), b.verdict.index()) << "trial " << trial;
    EXPECT_EQ(std::holds_alternative<SatVerdict>(a.verdict), oracle::NetworkQuerySat(net, p));
    if (std::holds_alternative<UnsatVerdict>(b.verdict)) {
      const CheckReport r = CheckProofFiles(Path("b.alethe") + ".problem.smt2", Path("b.alethe"));
      EXPECT_EQ(r.verdict, CheckVerdict::kValid) << "trial " << trial << ": " << r.reason;
    }
  }
}

TEST(OutputsSatisfyTest, Relations) {
  PropertySpec p;
  p.num_outputs = 2;
  p.output_constraints.push_back({{Rational(1), Rational(-1)}, Relation::kLessEqual, Rational(0)});
  RationalVector y(2);
  y << Rational(1), Rational(2);
  EXPECT_TRUE(OutputsSatisfy(p, y));
  y << Rational(3), Rational(2);
  EXPECT_FALSE(OutputsSatisfy(p, y));
}

}  // namespace
}  // namespace reluproof
