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

// Exact bounded-variable simplex over A . V = 0 with context-dependent bounds,
// Farkas certificates, and ReLU bound-tightening lemmas.

#ifndef RELUPROOF_TSOLVER_H_
#define RELUPROOF_TSOLVER_H_

#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "reluproof/model.h"

namespace reluproof {

// Per-variable stacks of bound records; the top of each stack is the
// tightest bound. Push/Pop restore the stacks exactly.
class BoundStore {
 public:
  explicit BoundStore(int num_vars);

  const Bound* lower(VarIndex i) const { return lower_[i].empty() ? nullptr : &lower_[i].back(); }
  const Bound* upper(VarIndex i) const { return upper_[i].empty() ? nullptr : &upper_[i].back(); }
  const Bound* get(VarIndex i, BoundKind kind) const {
    return kind == BoundKind::kLower ? lower(i) : upper(i);
  }

  // Pushes `b` when it is strictly tighter than the current bound of its kind.
  bool Tighten(const Bound& b);

  void Push();
  // Restores the state at context depth `level`; no-op when level >= depth.
  void Pop(int level);
  int depth() const { return static_cast<int>(marks_.size()); }

  BoundVector LowerValues() const;
  BoundVector UpperValues() const;
  int num_vars() const { return static_cast<int>(lower_.size()); }

  // Structural equality of all stacks, for tests.
  bool SameStacks(const BoundStore& other) const;

 private:
  std::vector<std::vector<Bound>> lower_;
  std::vector<std::vector<Bound>> upper_;
  std::vector<std::pair<VarIndex, BoundKind>> log_;
  std::vector<size_t> marks_;
};

// An infeasibility witness with the bound records it reads: for c = w^T A,
// the upper record of every c_i > 0 and the lower record of every c_i < 0
// (both records of the clash variable for a clash certificate).
struct Certificate {
  FarkasVector w;
  std::vector<Bound> support;
  bool hole = false;  // failed the exact sanity check
  int node = 0;       // proof-tree node
};

struct ProofNode {
  int id = 0;
  int parent = -1;
  std::optional<Literal> literal;
  std::vector<int> lemma_ids;
  std::vector<int> certificates;  // indices into TSolver::certificates()
};

struct PhaseImplication {
  Literal literal;
  int relu = 0;
  CausingProof cause;  // strict bound: l(b) > 0, l(f) > 0 or u(b) < 0
};

struct FeasibilityResult {
  bool feasible = false;
  RationalVector witness;
  int certificate = -1;  // index into certificates() when infeasible
};

struct PropagationResult {
  std::vector<int> new_lemmas;
  std::vector<PhaseImplication> implications;
  int certificate = -1;  // set when a derived bound contradicted another
};

struct TSolverOptions {
  int max_propagation_rounds = 16;
  // 1-based ordinals of certificates to corrupt before the sanity check.
  std::set<int> fault_certificates;
};

class TSolver {
 public:
  explicit TSolver(const TableauQuery& q, TSolverOptions options = {});

  const TableauQuery& query() const { return q_; }
  const BoundStore& bounds() const { return store_; }

  void push_context();
  void pop_context(int level);
  int depth() const { return store_.depth(); }

  // 0 unassigned, +1 active, -1 inactive in the current context.
  int phase(int relu) const { return phase_[relu]; }

  // Returns a certificate index when the new bounds clash with existing ones.
  std::optional<int> assert_phase(Literal lit);

  FeasibilityResult check_feasible();

  PropagationResult propagate_relu_lemmas();

  const std::vector<Certificate>& certificates() const { return certificates_; }
  const Lemma& lemma(int id) const { return lemmas_[lemma_index_.at(id)]; }
  bool has_lemma(int id) const { return lemma_index_.count(id) > 0; }
  void mark_in_proof(int id) { lemmas_[lemma_index_.at(id)].include_in_proof = true; }
  const std::vector<Lemma>& lemmas() const { return lemmas_; }
  const std::vector<ProofNode>& proof_tree() const { return nodes_; }

  // The bound of `var` of `kind` implied by the current bounds through the
  // single row `row`, or nullopt when a needed bound is infinite.
  std::optional<CausingProof> ImpliedBound(int row, VarIndex var, BoundKind kind);

  // The tightest of the stored bound and the single-row implied bounds.
  std::optional<CausingProof> EffectiveBound(VarIndex var, BoundKind kind);

 private:
  ChronoId NextChrono() { return ++chrono_; }
  int AddCertificate(FarkasVector w);
  int ClashCertificate(VarIndex var);
  bool Clashing(VarIndex var) const;
  void Pivot(int row, VarIndex entering);
  void RecomputeBasics();
  // Pushes a lemma bound; returns a certificate index on clash, -1 otherwise,
  // and sets *tightened when the bound was new.
  int Derive(int relu, ReluRule rule, const CausingProof& cause, VarIndex var, BoundKind kind,
             const Rational& value, PropagationResult* out, bool* tightened);

  TableauQuery q_;
  TSolverOptions options_;
  BoundStore store_;
  ChronoId chrono_ = 0;

  std::vector<int> phase_;
  std::vector<int> phase_log_;
  std::vector<size_t> phase_marks_;

  // Simplex state: M = T . A, M(i, basic_[i]) = 1 and zero elsewhere in
  // that column.
  RationalMatrix m_;
  RationalMatrix t_;
  std::vector<VarIndex> basic_;
  std::vector<int> row_of_basic_;  // -1 for nonbasic
  RationalVector x_;

  std::vector<std::vector<int>> rows_of_var_;

  std::vector<Certificate> certificates_;
  std::vector<Lemma> lemmas_;
  std::unordered_map<int, size_t> lemma_index_;
  std::vector<ProofNode> nodes_;
  std::vector<int> node_stack_;
};

}  // namespace reluproof

#endif  // RELUPROOF_TSOLVER_H_
