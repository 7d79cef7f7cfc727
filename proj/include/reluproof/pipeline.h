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

// End-to-end verification: compile, tighten, solve, and write the problem
// and proof files.

#ifndef RELUPROOF_PIPELINE_H_
#define RELUPROOF_PIPELINE_H_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "reluproof/frontend.h"
#include "reluproof/model.h"
#include "reluproof/snc.h"

namespace reluproof {

struct VerifyOptions {
  std::optional<std::string> proof_path;
  // Defaults to proof_path + ".problem.smt2".
  std::optional<std::string> problem_path;
  int workers = 1;
  int split_depth = 0;
  bool pdcl = true;
  double timeout_seconds = 0;  // 0: none
  uint64_t seed = 0;
  std::set<int> fault_certificates;
  bool check_chains = false;
};

struct VerifyOutcome {
  Verdict verdict;
  // Sat verdicts: the network outputs at the witness input.
  RationalVector outputs;
  SncStats stats;
  int64_t proof_steps = 0;
  std::vector<std::string> warnings;
  std::vector<TheoryClause> theory_clauses;
  std::vector<std::vector<int>> derived_clauses;
  CompiledQuery compiled;  // after bound tightening
};

VerifyOutcome Verify(const Network& net, const PropertySpec& property, const VerifyOptions& options);

// True when the outputs satisfy every output constraint of the property.
bool OutputsSatisfy(const PropertySpec& property, const RationalVector& outputs);

}  // namespace reluproof

#endif  // RELUPROOF_PIPELINE_H_
