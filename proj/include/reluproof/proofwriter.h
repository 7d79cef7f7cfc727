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

// Alethe proof emission: problem assumptions, la_generic steps from Farkas
// vectors, ReLU lemma fragments, Boolean resolution, holes, and the merge of
// split subproofs.

#ifndef RELUPROOF_PROOFWRITER_H_
#define RELUPROOF_PROOFWRITER_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "reluproof/model.h"
#include "reluproof/satcore.h"
#include "reluproof/tsolver.h"

namespace reluproof {

struct ReductionTriple {
  RationalVector w1;  // rows
  RationalVector w2;  // lower bounds, >= 0
  RationalVector w3;  // upper bounds, >= 0
};

// Throws std::invalid_argument unless w certifies infeasibility.
ReductionTriple ReduceFarkas(const FarkasVector& w, const RationalMatrix& rows,
                             const BoundVector& lower, const BoundVector& upper);
ReductionTriple ReduceFarkas(const FarkasVector& w, const TableauQuery& q);

// w1^T A V + w2^T (V - l) + w3^T (u - V), which is a constant; nullopt when
// a bound with a nonzero multiplier is infinite.
std::optional<Rational> TripleCombination(const ReductionTriple& t, const RationalMatrix& rows,
                                          const BoundVector& lower, const BoundVector& upper);

struct AletheStep {
  std::string id;
  std::vector<std::string> clause;
  std::string rule;
  std::vector<std::string> premises;
  std::vector<std::string> args;

  std::string ToString() const;
};

// The proof output shared by all workers. Lines are appended in whole
// fragments under one mutex; ids come from one counter.
class ProofSink {
 public:
  explicit ProofSink(std::ostream* out);

  std::string NewId();
  void Append(const std::vector<std::string>& lines);
  // Runs `make` once per key and appends its lines before returning.
  void AppendOnce(const std::string& key, const std::function<std::vector<std::string>()>& make);
  void Close();
  bool closed() const { return closed_.load(); }
  int64_t lines() const { return lines_.load(); }
  // Id of the most recently appended step or assumption.
  std::string last_id();

 private:
  std::ostream* out_;
  std::mutex mu_;
  std::set<std::string> done_;
  std::string last_id_;
  std::atomic<int64_t> next_id_{0};
  std::atomic<int64_t> lines_{0};
  std::atomic<bool> closed_{false};
};

// Step ids of the problem assumptions.
std::string RowStepId(int row);
std::string BoundStepId(VarIndex var, BoundKind kind);
std::string PhaseName(int var);
// SAT literal +k is `active_k`, -k is `(not active_k)`.
std::string PhaseLiteral(int lit);

// Row asserts first, then bounds, lower before upper.
void EmitProblemAssumptions(const TableauQuery& q, ProofSink* sink);

// An extra zero-weight atom that weakens a leaf clause by a negated decision.
struct WeakeningAtom {
  Literal decision;
  VarIndex var = 0;
  BoundKind kind = BoundKind::kUpper;  // value is always 0
};

// Picks the atom of `decision` that can be added to a leaf over `cert`, or
// nullopt when both of its atoms already occur in the leaf.
std::optional<WeakeningAtom> PickWeakeningAtom(const TableauQuery& q, const Certificate& cert,
                                               Literal decision);

class AletheProofWriter {
 public:
  AletheProofWriter(const TableauQuery& q, ProofSink* sink, const TSolver* tsolver);

  // Leaf conflict: la_generic over the certificate, then one resolution with
  // the justifications of its rows and bounds. `clause` must equal the
  // resolvent up to order.
  void EmitLeaf(ClauseId id, const std::vector<int>& clause, const Certificate& cert,
                const std::vector<WeakeningAtom>& weakening = {});
  void EmitHole(ClauseId id, const std::vector<int>& clause);
  void EmitPhaseReason(ClauseId id, const std::vector<int>& clause, const PhaseImplication& imp);
  // Resolution over the mapped chain; emits a hole when the chain does not
  // replay to `clause`.
  void EmitDerived(ClauseId id, const std::vector<int>& clause, const std::vector<ClauseId>& chain);

  std::string StepOf(ClauseId id) const;
  bool HasStep(ClauseId id) const { return steps_.count(id) > 0; }
  int holes() const { return holes_; }
  int64_t steps_written() const { return steps_written_; }

  // Individual pieces, exposed for tests.
  void EmitReluAssumption(int var);
  std::string EmitLemma(int lemma_id);
  std::string EmitCausing(const CausingProof& cause);

 private:
  std::string Justify(const Bound& b);
  std::string PhaseStepFor(Literal decision, VarIndex var, BoundKind kind);
  std::string Emit(AletheStep step);
  // Resolves the clauses of `premises` left to right; throws when a step does
  // not have exactly one pivot.
  std::vector<std::string> Resolve(const std::vector<std::string>& premises) const;
  std::string ResolutionStep(const std::vector<std::string>& premises);
  std::vector<std::string> ClauseTerms(const std::vector<int>& lits);
  std::string ReluRowTerm(int relu) const;
  void CheckSame(const std::vector<std::string>& got, const std::vector<int>& want) const;

  const TableauQuery& q_;
  ProofSink* sink_;
  const TSolver* ts_;
  std::unordered_map<ClauseId, std::string> steps_;
  std::unordered_map<int, std::string> lemma_steps_;
  // Clause of every step this writer can use as a premise.
  std::unordered_map<std::string, std::vector<std::string>> clause_of_;
  int holes_ = 0;
  int64_t steps_written_ = 0;
};

// One entry per split cube: the cube (literals over the split variables, in
// split order) and the step id and clause of its final step.
struct SubproofResult {
  std::vector<int> cube;
  std::string step;
  std::vector<int> clause;
};

// Resolves the subproof clauses pairwise along the split variables into the
// empty clause. Returns the final step id.
std::string EmitSncConclusion(const std::vector<int>& split_vars,
                              const std::vector<SubproofResult>& results, ProofSink* sink);

// Makes `step`, whose clause is empty, the last step of the proof, restating
// it by a one-premise resolution if other steps were written after it.
std::string EmitFinalStep(const std::string& step, ProofSink* sink);

}  // namespace reluproof

#endif  // RELUPROOF_PROOFWRITER_H_
