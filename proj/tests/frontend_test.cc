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

#include "reluproof/frontend.h"

#include <gtest/gtest.h>

#include "oracle.h"
#include "reluproof/proofwriter.h"

namespace reluproof {
namespace {

const std::string kData = RELUPROOF_DATA_DIR;

FrontendError::Kind KindOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const FrontendError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no FrontendError";
  return FrontendError::Kind::kIo;
}

TEST(ParseNetworkTest, MinimalIdentity) {
  const Network net =
      ParseNetworkText(R"({"layers":[{"weights":[[1]],"bias":[0],"activation":"identity"}]})");
  EXPECT_EQ(net.input_dim(), 1);
  EXPECT_EQ(net.output_dim(), 1);
  EXPECT_EQ(net.num_relus(), 0);
}

TEST(ParseNetworkTest, DecimalsAreExact) {
  const Network a =
      ParseNetworkText(R"({"layers":[{"weights":[["0.1"]],"bias":[0],"activation":"identity"}]})");
  EXPECT_EQ(a.layers[0].weights(0, 0), Rational(1, 10));
  const Network b =
      ParseNetworkText(R"({"layers":[{"weights":[[0.1]],"bias":[0.25],"activation":"identity"}]})");
  EXPECT_EQ(b.layers[0].weights(0, 0), Rational(1, 10));
  EXPECT_EQ(b.layers[0].bias(0), Rational(1, 4));
}

TEST(ParseNetworkTest, ShippedTwoReluFixture) {
  const Network net = ParseNetwork(kData + "/two_relu.json");
  EXPECT_EQ(net.num_relus(), 2);
  EXPECT_EQ(net.layers.size(), 2u);
}

TEST(ParseNetworkTest, Errors) {
  EXPECT_EQ(KindOf([] { ParseNetworkText("{"); }), FrontendError::Kind::kParse);
  EXPECT_EQ(KindOf([] { ParseNetworkText(R"({"layers":[]})"); }), FrontendError::Kind::kSchema);
  EXPECT_EQ(KindOf([] { ParseNetwork("/nonexistent/net.json"); }), FrontendError::Kind::kIo);
  EXPECT_EQ(KindOf([] {
              ParseNetworkText(R"({"layers":[{"weights":[[1]],"bias":[0],"activation":"tanh"}]})");
            }),
            FrontendError::Kind::kSchema);
}

TEST(ParseNetworkTest, ParseErrorHasLocation) {
  try {
    ParseNetworkText("{\n  \"layers\": [\n    oops\n  ]\n}");
    FAIL();
  } catch (const FrontendError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(ParsePropertyTest, BoxAndOutputConstraint) {
  const PropertySpec p = ParsePropertyText(
      "(declare-const X_0 Real)\n(declare-const Y_0 Real)\n"
      "(assert (>= X_0 1)) (assert (<= X_0 2)) (assert (<= Y_0 0))");
  ASSERT_EQ(p.input_lower.size(), 1u);
  EXPECT_EQ(p.input_lower[0], Rational(1));
  EXPECT_EQ(p.input_upper[0], Rational(2));
  ASSERT_EQ(p.output_constraints.size(), 1u);
  EXPECT_EQ(p.output_constraints[0].relation, Relation::kLessEqual);
  EXPECT_EQ(p.output_constraints[0].rhs, Rational(0));
  EXPECT_EQ(p.output_constraints[0].coeffs[0], Rational(1));
}

TEST(ParsePropertyTest, LinearOutputTermsAndConjunction) {
  const PropertySpec p = ParsePropertyText(
      "(declare-const X_0 Real)(declare-const Y_0 Real)(declare-const Y_1 Real)\n"
      "(assert (and (>= X_0 (- 1)) (<= X_0 1)))\n"
      "(assert (<= (- Y_0 (* 2 Y_1)) (/ 1 2)))");
  ASSERT_EQ(p.output_constraints.size(), 1u);
  EXPECT_EQ(p.output_constraints[0].coeffs[0], Rational(1));
  EXPECT_EQ(p.output_constraints[0].coeffs[1], Rational(-2));
  EXPECT_EQ(p.output_constraints[0].rhs, Rational(1, 2));
  EXPECT_EQ(p.input_lower[0], Rational(-1));
}

TEST(ParsePropertyTest, Errors) {
  EXPECT_EQ(KindOf([] { ParsePropertyText(""); }), FrontendError::Kind::kSchema);
  EXPECT_EQ(KindOf([] { ParsePropertyText("(declare-const X_0 Real)(declare-const Y_0 Real)"); }),
            FrontendError::Kind::kSchema);
  EXPECT_EQ(KindOf([] {
              ParsePropertyText(
                  "(declare-const X_0 Real)(declare-const Y_0 Real)"
                  "(assert (>= X_0 0))(assert (<= X_0 1))"
                  "(assert (or (<= Y_0 0) (>= Y_0 1)))");
            }),
            FrontendError::Kind::kUnsupported);
  EXPECT_EQ(KindOf([] { ParsePropertyText("(declare-const X_0 Real)(assert (<= Y_3 0))"); }),
            FrontendError::Kind::kScope);
}

TEST(CompileTest, IdentityBoxSlackRow) {
  const Network net = ParseNetwork(kData + "/passthrough.json");
  const PropertySpec p = ParseProperty(kData + "/passthrough_unsat.vnnlib");
  const CompiledQuery c = Compile(net, p);
  EXPECT_TRUE(c.query.relus.empty());
  EXPECT_EQ(c.query.num_rows(), 2);  // one affine row and one slack row
  EXPECT_FALSE(oracle::NetworkQuerySat(net, p));
  EXPECT_FALSE(oracle::TableauSat(c.query, {}));
}

TEST(CompileTest, OneReluTriple) {
  const Network net = ParseNetworkText(
      R"({"layers":[{"weights":[[1]],"bias":[0],"activation":"relu"},
                    {"weights":[[1]],"bias":[0],"activation":"identity"}]})");
  PropertySpec p;
  p.input_lower = {Rational(-1)};
  p.input_upper = {Rational(1)};
  p.num_outputs = 1;
  p.output_constraints.push_back({{Rational(1)}, Relation::kGreaterEqual, Rational(2)});
  const CompiledQuery c = Compile(net, p);
  ASSERT_EQ(c.query.relus.size(), 1u);
  const ReluTriple r = c.query.relus[0];
  EXPECT_EQ(r.f, r.b + 1);
  EXPECT_EQ(r.aux, r.b + 2);
  EXPECT_EQ(c.abstraction.relu_of_var[1], 0);
  EXPECT_EQ(c.abstraction.var_of_relu[0], 1);
  EXPECT_EQ(*c.query.lower[r.f], Rational(0));
  EXPECT_EQ(*c.query.lower[r.aux], Rational(0));
  // f - b - aux = 0
  bool found = false;
  for (int j = 0; j < c.query.num_rows(); ++j)
    if (c.query.rows(j, r.f) == Rational(1) && c.query.rows(j, r.b) == Rational(-1) &&
        c.query.rows(j, r.aux) == Rational(-1))
      found = true;
  EXPECT_TRUE(found);
}

TEST(CompileTest, PhaseAssumptionShape) {
  const Network net = ParseNetworkText(
      R"({"layers":[{"weights":[[1]],"bias":[0],"activation":"relu"},
                    {"weights":[[1]],"bias":[0],"activation":"identity"}]})");
  PropertySpec p;
  p.input_lower = {Rational(-1)};
  p.input_upper = {Rational(1)};
  p.num_outputs = 1;
  p.output_constraints.push_back({{Rational(1)}, Relation::kGreaterEqual, Rational(2)});
  const CompiledQuery c = Compile(net, p);
  const std::string expected = "(assert (xor " + ActivePhaseTerm(c.query, 0) + " " +
                               InactivePhaseTerm(c.query, 0) + "))";
  EXPECT_NE(SerializeProblem(c.query).find(expected), std::string::npos);
}

TEST(CompileTest, DimensionMismatch) {
  const Network net = ParseNetwork(kData + "/two_relu.json");
  const PropertySpec p = ParseProperty(kData + "/passthrough_unsat.vnnlib");
  EXPECT_EQ(KindOf([&] { Compile(net, p); }), FrontendError::Kind::kCompile);
}

}  // namespace
}  // namespace reluproof
