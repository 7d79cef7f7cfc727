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

// CDCL SAT solver with two watched literals, first-UIP learning, and an
// external propagator interface in the IPASIR-UP style. Literals are DIMACS
// integers. Every learned clause is reported together with the ordered list
// of clause ids whose sequential resolution yields it.

#ifndef RELUPROOF_SATCORE_H_
#define RELUPROOF_SATCORE_H_

#include <atomic>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "reluproof/model.h"

namespace reluproof {

using ClauseId = uint64_t;

class ExternalPropagator {
 public:
  virtual ~ExternalPropagator() = default;

  virtual void notify_assignment(const std::vector<int>& lits) = 0;
  virtual void notify_new_decision_level() = 0;
  virtual void notify_backtrack(size_t new_level) = 0;
  virtual bool cb_check_found_model(const std::vector<int>& model) = 0;
  virtual int cb_decide() = 0;
  virtual int cb_propagate() = 0;
  virtual int cb_add_reason_clause_lit(int propagated_lit) = 0;
  virtual bool cb_has_external_clause() = 0;
  virtual int cb_add_external_clause_lit() = 0;
};

class ProofTracer {
 public:
  virtual ~ProofTracer() = default;

  // Input clauses, external (theory conflict) clauses and reason clauses.
  virtual void add_original_clause(ClauseId id, const std::vector<int>& clause,
                                   ClauseOrigin origin) = 0;
  // Learned clauses. Resolving the chain's clauses left to right, each step on
  // its unique complementary literal, gives `clause` up to order.
  virtual void add_derived_clause(ClauseId id, const std::vector<int>& clause,
                                  const std::vector<ClauseId>& chain) = 0;
};

class SatContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct DerivedClauseRecord {
  ClauseId id = 0;
  std::vector<int> clause;
  std::vector<ClauseId> chain;
};

struct SatStats {
  int64_t decisions = 0;
  int64_t conflicts = 0;
  int64_t propagations = 0;
  int64_t learned = 0;
};

enum class SatResult { kSat, kUnsat, kUnknown };

class SatSolver {
 public:
  explicit SatSolver(int num_vars);

  int num_vars() const { return num_vars_; }

  void connect_propagator(ExternalPropagator* propagator) { propagator_ = propagator; }
  void connect_tracer(ProofTracer* tracer) { tracer_ = tracer; }
  // When set, solve returns kUnknown soon after the flag becomes true.
  void set_stop_flag(const std::atomic<bool>* stop) { stop_ = stop; }
  // Replays every learned chain and throws SatContractError on mismatch.
  void set_check_chains(bool on) { check_chains_ = on; }

  // Tautologies are dropped (returns 0). The empty clause makes the solver
  // inconsistent.
  ClauseId add_clause(const std::vector<int>& lits);

  // Assumptions are decided first, one per decision level. On kUnsat,
  // final_clause() is a clause over negated assumptions (empty when the
  // formula is unsatisfiable outright) and final_clause_id() names it.
  SatResult solve(const std::vector<int>& assumptions = {});

  // value(v) for the last kSat model: +v or -v.
  int model_value(int var) const;
  std::vector<int> model() const;

  const std::vector<int>& final_clause() const { return final_clause_; }
  ClauseId final_clause_id() const { return final_clause_id_; }

  const std::vector<DerivedClauseRecord>& derived() const { return derived_; }
  std::optional<std::vector<int>> clause(ClauseId id) const;
  const SatStats& stats() const { return stats_; }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

 private:
  static constexpr ClauseId kNoReason = 0;
  static constexpr ClauseId kExternalReason = ~ClauseId{0};

  struct StoredClause {
    std::vector<int> lits;
  };

  int Value(int lit) const;  // 1 true, -1 false, 0 unassigned
  int Level(int lit) const { return level_[std::abs(lit)]; }
  size_t WatchIndex(int lit) const;
  ClauseId Store(std::vector<int> lits, bool watch);
  void Assign(int lit, ClauseId reason);
  void NewLevel();
  void Backtrack(int level);
  // Returns the id of a falsified clause, or kNoReason.
  ClauseId Propagate();
  ClauseId ReasonOf(int var);
  // Conflict handling at the current level; returns false when the empty
  // clause was derived.
  bool Analyze(ClauseId conflict);
  void DeriveFinal(int falsified_assumption);
  ClauseId Record(std::vector<int> lits, std::vector<ClauseId> chain);
  std::vector<int> ReadExternalClause(bool reason, int propagated);
  // Handles an externally supplied clause. Returns false on global UNSAT.
  bool IngestExternal(ClauseId id);
  void NotifyTrail();
  bool Stopped() const { return stop_ && stop_->load(std::memory_order_relaxed); }

  int num_vars_;
  ExternalPropagator* propagator_ = nullptr;
  ProofTracer* tracer_ = nullptr;
  const std::atomic<bool>* stop_ = nullptr;
  bool check_chains_ = false;

  std::vector<StoredClause> clauses_;  // index = id - 1
  std::vector<std::vector<ClauseId>> watches_;
  std::vector<int> value_;  // per var: 1, -1, 0
  std::vector<int> level_;
  std::vector<ClauseId> reason_;
  std::vector<int> trail_;
  std::vector<size_t> trail_lim_;
  size_t qhead_ = 0;
  size_t notified_ = 0;
  bool inconsistent_ = false;
  ClauseId empty_clause_id_ = 0;

  std::vector<int> model_;
  std::vector<int> final_clause_;
  ClauseId final_clause_id_ = 0;
  std::vector<DerivedClauseRecord> derived_;
  SatStats stats_;
};

// Sequential resolution used for chain replay; nullopt when some step does
// not have exactly one complementary pair.
std::optional<std::vector<int>> ResolveChain(const std::vector<std::vector<int>>& clauses);

}  // namespace reluproof

#endif  // RELUPROOF_SATCORE_H_
