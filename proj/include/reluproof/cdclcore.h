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

// The theory side of CDCL(T): connects the SAT solver to the simplex solver,
// explains conflicts and propagations with proof-based conflict clauses, and
// forwards every clause to the proof writer.

#ifndef RELUPROOF_CDCLCORE_H_
#define RELUPROOF_CDCLCORE_H_

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "reluproof/frontend.h"
#include "reluproof/proofwriter.h"
#include "reluproof/satcore.h"
#include "reluproof/tsolver.h"

namespace reluproof {

struct CdclOptions {
  // Off: every conflict clause negates all asserted phase literals.
  bool pdcl = true;
  bool record_clauses = true;
};

struct TheoryClause {
  std::vector<int> clause;
  ClauseOrigin origin = ClauseOrigin::kTheoryConflict;
  bool hole = false;
};

struct CdclStats {
  int64_t theory_conflicts = 0;
  int64_t theory_propagations = 0;
  int64_t holes = 0;
};

class CdclCore : public ExternalPropagator, public ProofTracer {
 public:
  // `writer` may be null when no proof is wanted.
  CdclCore(TSolver* tsolver, const AbstractionMap& abstraction, AletheProofWriter* writer,
           CdclOptions options = {});

  void notify_assignment(const std::vector<int>& lits) override;
  void notify_new_decision_level() override;
  void notify_backtrack(size_t new_level) override;
  bool cb_check_found_model(const std::vector<int>& model) override;
  int cb_decide() override;
  int cb_propagate() override;
  int cb_add_reason_clause_lit(int propagated_lit) override;
  bool cb_has_external_clause() override;
  int cb_add_external_clause_lit() override;

  void add_original_clause(ClauseId id, const std::vector<int>& clause,
                           ClauseOrigin origin) override;
  void add_derived_clause(ClauseId id, const std::vector<int>& clause,
                          const std::vector<ClauseId>& chain) override;

  // Proof-based conflict clause for a certificate: the negated decisions its
  // support depends on. Marks every lemma it reaches for the proof.
  std::vector<int> ConflictClause(const Certificate& cert);

  const std::optional<RationalVector>& witness() const { return witness_; }
  const std::vector<TheoryClause>& theory_clauses() const { return theory_clauses_; }
  const CdclStats& stats() const { return stats_; }
  const AbstractionMap& abstraction() const { return abstraction_; }

 private:
  struct Pending {
    std::vector<int> clause;
    int certificate = -1;  // -1: naive clause (hole)
    std::vector<WeakeningAtom> weakening;
  };
  struct Queued {
    int level = 0;
    PhaseImplication imp;
  };

  void SetConflict(int certificate);
  void CollectSupport(const std::vector<Bound>& support, std::set<int>* out);
  std::vector<int> NaiveClause() const;
  void Bump(const std::vector<int>& clause);

  TSolver* ts_;
  AbstractionMap abstraction_;
  AletheProofWriter* writer_;
  CdclOptions options_;

  int level_ = 0;
  std::vector<int> value_;  // per Boolean var: 1, -1, 0
  std::vector<std::pair<int, int>> assigned_;  // (literal, level), trail order
  bool dirty_ = true;

  std::optional<Pending> pending_;
  std::optional<Pending> streamed_;  // last external clause handed to the solver
  size_t stream_pos_ = 0;
  bool streaming_ = false;

  std::vector<Queued> queue_;
  std::map<int, Queued> propagated_;
  std::set<int> queued_lits_;

  int reason_lit_ = 0;
  std::vector<int> reason_buf_;
  size_t reason_pos_ = 0;
  bool reason_active_ = false;
  std::optional<std::pair<int, std::vector<int>>> last_reason_;

  std::map<int, std::vector<int>> lemma_support_;  // memoized decision literals

  std::vector<double> score_;
  double bump_ = 1.0;

  std::optional<RationalVector> witness_;
  std::vector<TheoryClause> theory_clauses_;
  CdclStats stats_;
};

}  // namespace reluproof

#endif  // RELUPROOF_CDCLCORE_H_
