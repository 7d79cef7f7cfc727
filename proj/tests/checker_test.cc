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

#include "reluproof/checker.h"

#include <gtest/gtest.h>

namespace reluproof {
namespace {

const char kProblem[] = R"(
(set-logic QF_LRA)
(declare-fun b () Real)
(declare-fun f () Real)
(declare-fun aux () Real)
(assert (xor (and (>= b 0.0) (<= aux 0.0)) (and (<= b 0.0) (<= f 0.0))))
(assert (>= b 1))
(assert (>= aux 1))
)";

// The b >= 1 => aux <= 0 fragment, with its causing bound stubbed by an
// assumption.
const char kFragment[] = R"(
(assume relu (xor
                 (!(and (>= b 0.0) (<= aux 0.0)) :named active)
                 (!(and (<= b 0.0) (<= f 0.0)) :named inactive)
                ))

(step s (cl active inactive) :rule xor1 :premises(relu))
(step si (cl (not inactive) (<= b 0.0)) :rule and_pos :args(0))
(step sa (cl (not active) (<= aux 0.0)) :rule and_pos :args(1))

(assume h (>= b 1))
(step cb (cl (>= b 1)) :rule resolution :premises (h))
(step t1 (cl (or
             (not (<= b 0.0))
             (not (>= b 1.0)))
           ):rule la_tautology)
(step t2 (cl (not (<= b 0.0)) (not (>= b 1.0))) :rule or :premises(t1))

(step db (cl (<= aux 0.0)) :rule resolution :premises(cb t2 si s sa))
)";

const char kClosing[] = R"(
(assume la (>= aux 1))
(step z1 (cl (not (<= aux 0)) (not (>= aux 1))) :rule la_generic :args (1 1))
(step z2 (cl) :rule resolution :premises (z1 db la))
)";

std::string Replace(std::string s, const std::string& from, const std::string& to) {
  const size_t pos = s.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  if (pos != std::string::npos) s.replace(pos, from.size(), to);
  return s;
}

TEST(ParseProofTest, FragmentHasNineCommands) {
  const std::vector<ParsedCommand> cmds = ParseProof(kFragment);
  ASSERT_EQ(cmds.size(), 9u);
  EXPECT_EQ(cmds[0].rule, "assume");
  EXPECT_EQ(cmds[1].rule, "xor1");
  EXPECT_EQ(cmds[8].id, "db");
  EXPECT_EQ(cmds[8].premises, (std::vector<std::string>{"cb", "t2", "si", "s", "sa"}));
  EXPECT_EQ(cmds[8].clause_size, 1);
}

TEST(ParseProofTest, Errors) {
  EXPECT_THROW(ParseProof(""), ProofSyntaxError);
  EXPECT_THROW(ParseProof("(step a (cl) :rule resolution :premises (b))\n(assume b (>= x 0))"),
               ProofSyntaxError);
  EXPECT_THROW(ParseProof("(step a (cl) :rule resolution"), ProofSyntaxError);
  EXPECT_THROW(ParseProof("(assume a (>= x 0))\n(assume a (>= x 1))"), ProofSyntaxError);
  try {
    ParseProof("(assume a (>= x 0))\n(step b (cl) :rule resolution :premises (zz))");
    FAIL();
  } catch (const ProofSyntaxError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(CheckProofTest, FragmentClosesValid) {
  const CheckReport r = CheckProofText(kProblem, std::string(kFragment) + kClosing);
  EXPECT_EQ(r.verdict, CheckVerdict::kValid) << r.reason << " at " << r.failing_step.value_or("");
  EXPECT_EQ(r.steps, 12);
}

TEST(CheckProofTest, FragmentAloneDoesNotEndEmpty) {
  const CheckReport r = CheckProofText(kProblem, kFragment);
  EXPECT_EQ(r.verdict, CheckVerdict::kInvalid);
  EXPECT_EQ(r.failing_step, "db");
}

TEST(CheckProofTest, EmptyProofIsSyntaxError) {
  EXPECT_THROW(CheckProofText(kProblem, ""), ProofSyntaxError);
  EXPECT_THROW(CheckProofText(kProblem, "  \n"), ProofSyntaxError);
}

TEST(CheckProofTest, DanglingPremiseInvalid) {
  const std::string proof = Replace(std::string(kFragment) + kClosing, ":premises (z1 db la)",
                                    ":premises (z1 dd la)");
  const CheckReport r = CheckProofText(kProblem, proof);
  EXPECT_EQ(r.verdict, CheckVerdict::kInvalid);
  EXPECT_EQ(r.failing_step, "z2");
}

struct Mutation {
  const char* rule;
  const char* from;
  const char* to;
  const char* step;
};

class MutationTest : public ::testing::TestWithParam<Mutation> {};

TEST_P(MutationTest, FailsAtMutatedStep) {
  const Mutation& m = GetParam();
  const std::string proof = Replace(std::string(kFragment) + kClosing, m.from, m.to);
  const CheckReport r = CheckProofText(kProblem, proof);
  EXPECT_EQ(r.verdict, CheckVerdict::kInvalid) << m.rule;
  EXPECT_EQ(r.failing_step, m.step) << m.rule << ": " << r.reason;
}

INSTANTIATE_TEST_SUITE_P(
    EachRule, MutationTest,
    ::testing::Values(
        Mutation{"la_generic", ":args (1 1)", ":args (1 2)", "z1"},
        Mutation{"la_generic_sign", ":args (1 1)", ":args (1 (- 1))", "z1"},
        Mutation{"la_tautology", "(not (>= b 1.0)))\n           )", "(not (>= b (- 1))))\n           )", "t1"},
        Mutation{"and_pos", "(<= aux 0.0)) :rule and_pos :args(1)", "(<= aux 0.0)) :rule and_pos :args(0)",
                 "sa"},
        Mutation{"xor1", "(cl active inactive) :rule xor1", "(cl active) :rule xor1", "s"},
        Mutation{"or", "(not (>= b 1.0))) :rule or", "(not (>= b 2))) :rule or", "t2"},
        Mutation{"resolution", "(step db (cl (<= aux 0.0))", "(step db (cl (<= aux 1))", "db"},
        Mutation{"assume", "(assume h (>= b 1))", "(assume h (>= b 2))", "h"}),
    [](const ::testing::TestParamInfo<Mutation>& info) { return std::string(info.param.rule); });

TEST(CheckProofTest, HolesMakeProofHoley) {
  const std::string proof = Replace(std::string(kFragment) + kClosing,
                                    "(step t1 (cl (or\n             (not (<= b 0.0))\n             "
                                    "(not (>= b 1.0)))\n           ):rule la_tautology)",
                                    "(step t1 (cl (or (not (<= b 0.0)) (not (>= b 1.0)))) :rule hole)");
  const CheckReport r = CheckProofText(kProblem, proof);
  EXPECT_EQ(r.verdict, CheckVerdict::kHoley);
  EXPECT_EQ(r.holes, std::vector<std::string>{"t1"});
}

TEST(CheckProofTest, StrictAndEqualityLiterals) {
  const char problem[] = R"(
(declare-fun x () Real)
(declare-fun y () Real)
(assert (= (+ x (* (- 1) y)) 0))
(assert (> x 0))
(assert (<= y 0))
)";
  // x - y = 0, x > 0, y <= 0
  const char proof[] = R"(
(assume r (= (+ x (* (- 1) y)) 0))
(assume a (> x 0))
(assume b (<= y 0))
(step t (cl (not (= (+ x (* (- 1) y)) 0)) (not (> x 0)) (not (<= y 0))) :rule la_generic :args ((- 1) 1 1))
(step e (cl) :rule resolution :premises (t r a b))
)";
  EXPECT_EQ(CheckProofText(problem, proof).verdict, CheckVerdict::kValid);
  // Without the strict literal the combination is only 0 <= 0.
  const std::string weak = Replace(Replace(proof, "(> x 0)", "(>= x 0)"), "(> x 0)", "(>= x 0)");
  const std::string weak_problem = Replace(problem, "(> x 0)", "(>= x 0)");
  const CheckReport r = CheckProofText(weak_problem, weak);
  EXPECT_EQ(r.verdict, CheckVerdict::kInvalid);
  EXPECT_EQ(r.failing_step, "t");
}

TEST(CheckProofTest, UnsupportedRule) {
  const std::string proof = std::string(kFragment) + "(step q (cl) :rule trust)\n";
  const CheckReport r = CheckProofText(kProblem, proof);
  EXPECT_EQ(r.verdict, CheckVerdict::kInvalid);
  EXPECT_EQ(r.failing_step, "q");
}

}  // namespace
}  // namespace reluproof
