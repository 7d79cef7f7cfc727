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

// Network JSON and VNN-LIB property parsing, and compilation of both into a
// TableauQuery.

#ifndef RELUPROOF_FRONTEND_H_
#define RELUPROOF_FRONTEND_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "reluproof/model.h"

namespace reluproof {

class FrontendError : public std::runtime_error {
 public:
  enum class Kind { kIo, kParse, kSchema, kUnsupported, kScope, kCompile };

  FrontendError(Kind kind, const std::string& message, int line = 0, int column = 0);

  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  Kind kind_;
  int line_;
  int column_;
};

enum class Relation { kLessEqual, kGreaterEqual };

// sum_i coeffs[i] * y_i (relation) rhs; coeffs has output_dim entries.
struct OutputConstraint {
  std::vector<Rational> coeffs;
  Relation relation = Relation::kLessEqual;
  Rational rhs;
};

struct PropertySpec {
  std::vector<Rational> input_lower;
  std::vector<Rational> input_upper;
  int num_outputs = 0;  // declared Y_i count
  std::vector<OutputConstraint> output_constraints;
};

// Boolean variable k (1-based) <-> ReLU triple k - 1.
struct AbstractionMap {
  std::vector<int> relu_of_var;  // index 0 unused
  std::vector<int> var_of_relu;

  int num_vars() const { return static_cast<int>(var_of_relu.size()); }
};

struct CompiledQuery {
  TableauQuery query;
  AbstractionMap abstraction;
};

Network ParseNetworkText(std::string_view text);
Network ParseNetwork(const std::string& path);

PropertySpec ParsePropertyText(std::string_view text);
PropertySpec ParseProperty(const std::string& path);

// Variable layout: inputs, the constant `one`, then per layer either
// (b, f, aux) per ReLU neuron or b per identity neuron, then one slack per
// output constraint.
CompiledQuery Compile(const Network& net, const PropertySpec& prop);

}  // namespace reluproof

#endif  // RELUPROOF_FRONTEND_H_
