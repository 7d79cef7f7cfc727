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

// Shared domain types: networks, tableau queries, bounds, literals, clauses,
// lemmas, infeasibility certificates and verdicts.

#ifndef RELUPROOF_MODEL_H_
#define RELUPROOF_MODEL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "reluproof/rational.h"

namespace reluproof {

using VarIndex = int;
using ChronoId = int64_t;

enum class Activation { kRelu, kIdentity };

struct Layer {
  RationalMatrix weights;  // out x in
  RationalVector bias;     // out
  Activation activation = Activation::kIdentity;
};

struct Network {
  std::vector<Layer> layers;

  int input_dim() const;
  int output_dim() const;
  int num_relus() const;
  // Throws std::invalid_argument when adjacent dimensions disagree or the
  // final layer is not affine.
  void Validate() const;
};

// Exact forward pass, relu(t) = max(t, 0).
RationalVector EvalNetwork(const Network& net, const RationalVector& x);

// Boolean literal over ReLU-phase variables. Variable k >= 1 is bound to ReLU
// triple k - 1; the positive literal means the active phase.
struct Literal {
  int var = 0;
  bool positive = true;

  int ToInt() const { return positive ? var : -var; }
  static Literal FromInt(int lit) { return Literal{lit < 0 ? -lit : lit, lit > 0}; }
  Literal operator~() const { return Literal{var, !positive}; }
  int relu() const { return var - 1; }
  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal& a, const Literal& b) {
    return a.ToInt() <=> b.ToInt();
  }
};

enum class ClauseOrigin { kInput, kSatDerived, kTheoryConflict, kTheoryReason };

struct Clause {
  std::vector<Literal> literals;
  ClauseOrigin origin = ClauseOrigin::kInput;
};

// Drops duplicates and sorts by DIMACS value. Returns false when the clause
// contains a complementary pair.
bool NormalizeClause(std::vector<Literal>& literals);

enum class BoundKind { kLower, kUpper };

struct BoundSource {
  enum class Kind { kInput, kDecision, kLemma };
  Kind kind = Kind::kInput;
  Literal literal;    // kDecision
  int lemma_id = -1;  // kLemma

  static BoundSource Input() { return {}; }
  static BoundSource Decision(Literal lit) { return {Kind::kDecision, lit, -1}; }
  static BoundSource FromLemma(int id) { return {Kind::kLemma, Literal{}, id}; }
};

struct Bound {
  VarIndex var = 0;
  BoundKind kind = BoundKind::kLower;
  Rational value;
  BoundSource source;
  ChronoId chrono_id = 0;
};

struct ReluTriple {
  VarIndex b = 0;
  VarIndex f = 0;
  VarIndex aux = 0;
};

using BoundVector = std::vector<std::optional<Rational>>;

// A . V = 0 with l <= V <= u, plus the ReLU triples. Row j of `rows` is the
// equality sum_i rows(j, i) * x_i = 0. A missing bound is infinite.
struct TableauQuery {
  int num_vars = 0;
  RationalMatrix rows;
  BoundVector lower;
  BoundVector upper;
  std::vector<ReluTriple> relus;
  int input_dim = 0;
  int output_dim = 0;
  VarIndex one_var = -1;            // constant variable fixed to 1, -1 if absent
  std::vector<VarIndex> output_vars;

  int num_rows() const { return static_cast<int>(rows.rows()); }
  // Checks the structural invariants; throws std::invalid_argument.
  void Validate() const;
  bool AllBoundsFinite() const;
};

// Row multipliers witnessing infeasibility. When `clash_var` is set the
// certificate is the bound pair l(x) > u(x) of that variable and `w` is zero.
struct FarkasVector {
  RationalVector w;
  std::optional<VarIndex> clash_var;

  static FarkasVector Zero(int rows) { return FarkasVector{RationalVector::Zero(rows), {}}; }
};

// c = w^T . A
RationalVector Combination(const FarkasVector& w, const RationalMatrix& rows);

// sum_{c_i > 0} c_i u_i + sum_{c_i < 0} c_i l_i. Returns nullopt when a needed
// bound is infinite (the value is +infinity). Throws std::invalid_argument on a
// dimension mismatch.
std::optional<Rational> ContradictionValue(const FarkasVector& w, const RationalMatrix& rows,
                                           const BoundVector& lower, const BoundVector& upper);
std::optional<Rational> ContradictionValue(const FarkasVector& w, const TableauQuery& q);

bool CertifiesInfeasibility(const FarkasVector& w, const TableauQuery& q);

enum class ReluRule {
  kLowerBToAuxZero,  // l(b) >= 0        => u(aux) <= 0
  kUpperBToFZero,    // u(b) <= 0        => u(f) <= 0
  kUpperBToF,        // u(b) <= c, c > 0 => u(f) <= c
  kLowerFToB,        // l(f) >= c, c > 0 => l(b) >= c
};

const char* RuleName(ReluRule rule);

// Justification of a causing bound. With an empty `w` the causing bound is an
// existing bound record, and `support` holds exactly that record. Otherwise
// w^T . A has coefficient -1 on the causing variable and `support` lists the
// bound records of the other variables the derivation reads.
struct CausingProof {
  Bound causing;
  FarkasVector w;
  std::vector<Bound> support;

  bool direct() const { return w.w.size() == 0; }
};

struct Lemma {
  int lemma_id = 0;  // equals derived.chrono_id
  int relu = 0;
  ReluRule rule = ReluRule::kLowerBToAuxZero;
  CausingProof cause;
  Bound derived;
  bool include_in_proof = false;
};

struct SatVerdict {
  RationalVector assignment;
};
struct UnsatVerdict {
  std::string proof_path;
};
struct UnsatPreprocessingVerdict {};
struct TimeoutVerdict {};

using Verdict = std::variant<SatVerdict, UnsatVerdict, UnsatPreprocessingVerdict, TimeoutVerdict>;

// Checks rows, bounds and ReLU semantics exactly.
bool SatisfiesQuery(const TableauQuery& q, const RationalVector& assignment,
                    bool check_relus = true);

// SMT-LIB term helpers shared by the problem serializer and the proof writer.
std::string VarName(VarIndex i);
std::string RowTerm(const TableauQuery& q, int row);
std::string BoundAtom(VarIndex var, BoundKind kind, const Rational& value);
std::string ActivePhaseTerm(const TableauQuery& q, int relu);
std::string InactivePhaseTerm(const TableauQuery& q, int relu);

// The serialized problem: declarations followed by one assert per row, per
// finite bound (lower before upper), and per ReLU xor-of-phases term.
std::string SerializeProblem(const TableauQuery& q);

}  // namespace reluproof

#endif  // RELUPROOF_MODEL_H_
