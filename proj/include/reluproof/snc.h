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

// Split-and-conquer: the query is split on phase-unfixed ReLUs into 2^k
// cubes, each solved by its own CDCL(T) instance under assumptions, and the
// subproofs are merged by resolution on the split variables. Depth 0 is the
// sequential solver.

#ifndef RELUPROOF_SNC_H_
#define RELUPROOF_SNC_H_

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reluproof/cdclcore.h"
#include "reluproof/frontend.h"
#include "reluproof/proofwriter.h"
#include "reluproof/tsolver.h"

namespace reluproof {

struct SncOptions {
  int workers = 1;
  int split_depth = 0;
  bool pdcl = true;
  // Nonzero: tasks start after a short pseudo-random delay derived from it.
  uint64_t seed = 0;
  TSolverOptions tsolver;
  bool check_chains = false;
  const std::atomic<bool>* stop = nullptr;
};

struct SncStats {
  int64_t decisions = 0;
  int64_t conflicts = 0;
  int64_t theory_conflicts = 0;
  int64_t lemmas = 0;
  int64_t leaf_certificates = 0;
  int64_t holes = 0;
};

enum class SncStatus { kSat, kUnsat, kUnknown };

struct SncResult {
  SncStatus status = SncStatus::kUnknown;
  std::optional<RationalVector> witness;
  std::vector<int> split_vars;
  std::string final_step;  // proof runs only
  SncStats stats;
  std::vector<std::string> warnings;
  std::vector<TheoryClause> theory_clauses;
  // Clauses learned by the SAT solvers, for inspection in tests.
  std::vector<std::vector<int>> derived_clauses;
};

// The k phase-unfixed ReLUs (l(b) < 0 < u(b)) with the widest b-interval,
// ties to the lower index, as Boolean variables. Clamps k to the number of
// candidates and reports the clamp in `warnings`.
std::vector<int> ChooseSplitVars(const TableauQuery& q, int k, std::vector<std::string>* warnings);

// Cube number `index` over `split_vars`: bit d set means the negative phase
// of split_vars[d].
std::vector<int> CubeOf(const std::vector<int>& split_vars, uint64_t index);

// `sink` may be null. When non-null the problem assumptions must already be in
// it; on kUnsat the merged proof ends with the empty clause.
SncResult SolveSnc(const TableauQuery& q, const AbstractionMap& abstraction, ProofSink* sink,
                   const SncOptions& options);

}  // namespace reluproof

#endif  // RELUPROOF_SNC_H_
