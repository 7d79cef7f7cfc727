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

// AletheProofWriter: leaves, lemma fragments and Boolean resolution.

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "reluproof/proofwriter.h"

namespace reluproof {
namespace {

std::string Not(const std::string& t) { return "(not " + t + ")"; }

std::string Complement(const std::string& t) {
  if (t.rfind("(not ", 0) == 0) return t.substr(5, t.size() - 6);
  return Not(t);
}

std::string Or2(const std::string& a, const std::string& b) {
  return "(or " + a + " " + b + ")";
}

std::string K(int var) { return std::to_string(var); }

std::string Atom(const Bound& b) { return BoundAtom(b.var, b.kind, b.value); }

}  // namespace

AletheProofWriter::AletheProofWriter(const TableauQuery& q, ProofSink* sink, const TSolver* tsolver)
    : q_(q), sink_(sink), ts_(tsolver) {
  for (int j = 0; j < q.num_rows(); ++j) clause_of_[RowStepId(j)] = {RowTerm(q, j)};
  for (int i = 0; i < q.num_vars; ++i) {
    if (q.lower[i])
      clause_of_[BoundStepId(i, BoundKind::kLower)] = {BoundAtom(i, BoundKind::kLower, *q.lower[i])};
    if (q.upper[i])
      clause_of_[BoundStepId(i, BoundKind::kUpper)] = {BoundAtom(i, BoundKind::kUpper, *q.upper[i])};
  }
}

std::string AletheProofWriter::StepOf(ClauseId id) const {
  auto it = steps_.find(id);
  if (it == steps_.end()) throw std::logic_error("no proof step for clause " + std::to_string(id));
  return it->second;
}

std::string AletheProofWriter::Emit(AletheStep step) {
  if (step.id.empty()) step.id = sink_->NewId();
  sink_->Append({step.ToString()});
  clause_of_[step.id] = step.clause;
  ++steps_written_;
  return step.id;
}

std::vector<std::string> AletheProofWriter::Resolve(const std::vector<std::string>& premises) const {
  std::vector<std::string> cur;
  auto add = [&cur](const std::string& l) {
    if (std::find(cur.begin(), cur.end(), l) == cur.end()) cur.push_back(l);
  };
  for (size_t p = 0; p < premises.size(); ++p) {
    auto it = clause_of_.find(premises[p]);
    if (it == clause_of_.end()) throw std::logic_error("unknown premise " + premises[p]);
    const std::vector<std::string>& next = it->second;
    if (p == 0) {
      for (const std::string& l : next) add(l);
      continue;
    }
    std::vector<std::string> pivots;
    for (const std::string& l : next)
      if (std::find(cur.begin(), cur.end(), Complement(l)) != cur.end()) pivots.push_back(l);
    if (pivots.size() != 1)
      throw std::logic_error("premise " + premises[p] + " has " + std::to_string(pivots.size()) +
                             " pivots");
    const std::string gone = Complement(pivots.front());
    cur.erase(std::find(cur.begin(), cur.end(), gone));
    for (const std::string& l : next)
      if (l != pivots.front()) add(l);
  }
  return cur;
}

std::string AletheProofWriter::ResolutionStep(const std::vector<std::string>& premises) {
  AletheStep s;
  s.clause = Resolve(premises);
  s.rule = "resolution";
  s.premises = premises;
  return Emit(std::move(s));
}

std::vector<std::string> AletheProofWriter::ClauseTerms(const std::vector<int>& lits) {
  std::vector<std::string> out;
  for (int lit : lits) {
    EmitReluAssumption(std::abs(lit));
    out.push_back(PhaseLiteral(lit));
  }
  return out;
}

void AletheProofWriter::CheckSame(const std::vector<std::string>& got,
                                  const std::vector<int>& want) const {
  std::vector<std::string> w;
  for (int lit : want) w.push_back(PhaseLiteral(lit));
  std::vector<std::string> g = got;
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  std::sort(g.begin(), g.end());
  if (g != w) throw std::logic_error("proof fragment does not derive the expected clause");
}

std::string AletheProofWriter::ReluRowTerm(int relu) const {
  const ReluTriple& r = q_.relus[relu];
  for (int j = 0; j < q_.num_rows(); ++j)
    if (!q_.rows(j, r.f).is_zero() && !q_.rows(j, r.aux).is_zero()) return RowStepId(j);
  throw std::logic_error("no row for ReLU " + std::to_string(relu));
}

void AletheProofWriter::EmitReluAssumption(int var) {
  const int relu = var - 1;
  const ReluTriple& r = q_.relus.at(relu);
  const std::string k = K(var);
  const std::string active = PhaseName(var);
  const std::string inactive = "inactive_" + k;
  const std::string b0l = BoundAtom(r.b, BoundKind::kLower, 0);
  const std::string b0u = BoundAtom(r.b, BoundKind::kUpper, 0);
  const std::string f0u = BoundAtom(r.f, BoundKind::kUpper, 0);
  const std::string a0u = BoundAtom(r.aux, BoundKind::kUpper, 0);
  const std::vector<AletheStep> steps = {
      {"s_" + k, {active, inactive}, "xor1", {"relu_" + k}, {}},
      {"si_" + k, {Not(inactive), b0u}, "and_pos", {}, {"0"}},
      {"sif_" + k, {Not(inactive), f0u}, "and_pos", {}, {"1"}},
      {"sab_" + k, {Not(active), b0l}, "and_pos", {}, {"0"}},
      {"sa_" + k, {Not(active), a0u}, "and_pos", {}, {"1"}},
      {"ib_" + k, {active, b0u}, "resolution", {"si_" + k, "s_" + k}, {}},
      {"if_" + k, {active, f0u}, "resolution", {"sif_" + k, "s_" + k}, {}},
  };
  if (clause_of_.count("s_" + k)) return;
  for (const AletheStep& s : steps) clause_of_[s.id] = s.clause;
  const std::string xor_term = "(xor (! " + ActivePhaseTerm(q_, relu) + " :named " + active +
                               ") (! " + InactivePhaseTerm(q_, relu) + " :named " + inactive +
                               "))";
  sink_->AppendOnce("relu_" + k, [&]() {
    std::vector<std::string> lines = {"(assume relu_" + k + " " + xor_term + ")"};
    for (const AletheStep& s : steps) lines.push_back(s.ToString());
    return lines;
  });
}

std::string AletheProofWriter::PhaseStepFor(Literal decision, VarIndex var, BoundKind kind) {
  const ReluTriple& r = q_.relus.at(decision.relu());
  EmitReluAssumption(decision.var);
  const std::string k = K(decision.var);
  if (decision.positive) {
    if (var == r.b && kind == BoundKind::kLower) return "sab_" + k;
    if (var == r.aux && kind == BoundKind::kUpper) return "sa_" + k;
  } else {
    if (var == r.b && kind == BoundKind::kUpper) return "ib_" + k;
    if (var == r.f && kind == BoundKind::kUpper) return "if_" + k;
  }
  throw std::logic_error("bound is not a phase atom");
}

std::string AletheProofWriter::Justify(const Bound& b) {
  switch (b.source.kind) {
    case BoundSource::Kind::kInput:
      return BoundStepId(b.var, b.kind);
    case BoundSource::Kind::kDecision:
      return PhaseStepFor(b.source.literal, b.var, b.kind);
    case BoundSource::Kind::kLemma:
      return EmitLemma(b.source.lemma_id);
  }
  throw std::logic_error("unknown bound source");
}

void AletheProofWriter::EmitLeaf(ClauseId id, const std::vector<int>& clause,
                                 const Certificate& cert,
                                 const std::vector<WeakeningAtom>& weakening) {
  AletheStep la;
  la.rule = "la_generic";
  std::vector<std::string> premises;
  if (cert.w.clash_var) {
    for (const Bound& b : cert.support) {
      la.clause.push_back(Not(Atom(b)));
      la.args.push_back("1");
      premises.push_back(Justify(b));
    }
  } else {
    const RationalVector c = Combination(cert.w, q_.rows);
    std::vector<std::string> row_steps;
    for (int j = 0; j < q_.num_rows(); ++j) {
      if (cert.w.w(j).is_zero()) continue;
      la.clause.push_back(Not(RowTerm(q_, j)));
      la.args.push_back(cert.w.w(j).ToSmtLib());
      row_steps.push_back(RowStepId(j));
    }
    for (const Bound& b : cert.support) {
      la.clause.push_back(Not(Atom(b)));
      la.args.push_back(abs(c(b.var)).ToSmtLib());
      premises.push_back(Justify(b));
    }
    premises.insert(premises.begin(), row_steps.begin(), row_steps.end());
  }
  for (const WeakeningAtom& a : weakening) {
    la.clause.push_back(Not(BoundAtom(a.var, a.kind, 0)));
    la.args.push_back("0");
    premises.push_back(PhaseStepFor(a.decision, a.var, a.kind));
  }
  ClauseTerms(clause);
  premises.insert(premises.begin(), Emit(std::move(la)));
  const std::string step = ResolutionStep(premises);
  CheckSame(clause_of_[step], clause);
  steps_[id] = step;
}

void AletheProofWriter::EmitHole(ClauseId id, const std::vector<int>& clause) {
  AletheStep s;
  s.clause = ClauseTerms(clause);
  s.rule = "hole";
  steps_[id] = Emit(std::move(s));
  ++holes_;
}

void AletheProofWriter::EmitDerived(ClauseId id, const std::vector<int>& clause,
                                    const std::vector<ClauseId>& chain) {
  std::vector<std::string> premises;
  for (ClauseId c : chain) premises.push_back(StepOf(c));
  std::vector<std::string> resolvent;
  try {
    resolvent = Resolve(premises);
    CheckSame(resolvent, clause);
  } catch (const std::logic_error&) {
    EmitHole(id, clause);
    return;
  }
  if (premises.size() == 1) {
    steps_[id] = premises.front();
    return;
  }
  steps_[id] = ResolutionStep(premises);
}

std::string AletheProofWriter::EmitCausing(const CausingProof& cause) {
  if (cause.direct()) return Justify(cause.causing);
  const bool lower = cause.causing.kind == BoundKind::kLower;
  const RationalVector c = Combination(cause.w, q_.rows);
  AletheStep la;
  la.rule = "la_generic";
  std::vector<std::string> premises;
  for (int j = 0; j < q_.num_rows(); ++j) {
    const Rational& wj = cause.w.w(j);
    if (wj.is_zero()) continue;
    la.clause.push_back(Not(RowTerm(q_, j)));
    la.args.push_back((lower ? -wj : wj).ToSmtLib());
    premises.push_back(RowStepId(j));
  }
  for (const Bound& b : cause.support) {
    la.clause.push_back(Not(Atom(b)));
    la.args.push_back(abs(c(b.var)).ToSmtLib());
    premises.push_back(Justify(b));
  }
  la.clause.push_back(Atom(cause.causing));
  la.args.push_back("1");
  premises.insert(premises.begin(), Emit(std::move(la)));
  return ResolutionStep(premises);
}

std::string AletheProofWriter::EmitLemma(int lemma_id) {
  auto cached = lemma_steps_.find(lemma_id);
  if (cached != lemma_steps_.end()) return cached->second;
  const Lemma& lemma = ts_->lemma(lemma_id);
  if (!lemma.include_in_proof)
    throw std::logic_error("lemma " + std::to_string(lemma_id) + " is not marked for the proof");
  const std::string cb = EmitCausing(lemma.cause);
  const ReluTriple& r = q_.relus[lemma.relu];
  const int var = lemma.relu + 1;
  EmitReluAssumption(var);
  const std::string k = K(var);
  const Rational& c = lemma.cause.causing.value;
  const std::string row = ReluRowTerm(lemma.relu);
  const int row_index = std::stoi(row.substr(1));
  const Rational unit = Rational(1) / q_.rows(row_index, r.f);
  const std::string row_term = RowTerm(q_, row_index);
  auto atom = [](VarIndex v, BoundKind kind, const Rational& value) {
    return BoundAtom(v, kind, value);
  };
  const BoundKind lo = BoundKind::kLower;
  const BoundKind up = BoundKind::kUpper;

  // Tautology t1 turned into a two-literal clause t2.
  auto taut = [&](const std::string& a, const std::string& b) {
    const std::string t1 = Emit({"", {Or2(a, b)}, "la_tautology", {}, {}});
    return Emit({"", {a, b}, "or", {t1}, {}});
  };
  auto ifl = [&](const Rational& row_arg, const std::string& a, const std::string& b,
                 const std::string& concl) {
    return Emit({"",
                 {Not(row_term), a, b, concl},
                 "la_generic",
                 {},
                 {(row_arg * unit).ToSmtLib(), "1", "1", "1"}});
  };

  std::vector<std::string> premises;
  switch (lemma.rule) {
    case ReluRule::kLowerBToAuxZero:
      if (c.sign() > 0) {
        premises = {cb, taut(Not(atom(r.b, up, 0)), Not(atom(r.b, lo, c))), "si_" + k, "s_" + k,
                    "sa_" + k};
      } else {
        premises = {ifl(1, Not(atom(r.b, lo, 0)), Not(atom(r.f, up, 0)), atom(r.aux, up, 0)), row,
                    "sif_" + k, "s_" + k, "sa_" + k, cb};
      }
      break;
    case ReluRule::kUpperBToFZero:
      if (c.sign() < 0) {
        premises = {cb, taut(Not(atom(r.b, lo, 0)), Not(atom(r.b, up, c))), "sab_" + k, "s_" + k,
                    "sif_" + k};
      } else {
        premises = {ifl(-1, Not(atom(r.b, up, 0)), Not(atom(r.aux, up, 0)), atom(r.f, up, 0)), row,
                    "sa_" + k, "s_" + k, "sif_" + k, cb};
      }
      break;
    case ReluRule::kUpperBToF:
      premises = {ifl(-1, Not(atom(r.b, up, c)), Not(atom(r.aux, up, 0)), atom(r.f, up, c)), row,
                  "sa_" + k, "s_" + k, "sif_" + k,
                  taut(Not(atom(r.f, up, 0)), atom(r.f, up, c)), cb};
      break;
    case ReluRule::kLowerFToB:
      premises = {ifl(-1, Not(atom(r.f, lo, c)), Not(atom(r.aux, up, 0)), atom(r.b, lo, c)), row,
                  "sa_" + k, "s_" + k, "sif_" + k,
                  taut(Not(atom(r.f, up, 0)), Not(atom(r.f, lo, c))), cb};
      break;
  }
  const std::string step = ResolutionStep(premises);
  const std::vector<std::string>& got = clause_of_[step];
  if (std::find(got.begin(), got.end(), Atom(lemma.derived)) == got.end())
    throw std::logic_error("lemma fragment does not derive its bound");
  lemma_steps_[lemma_id] = step;
  return step;
}

void AletheProofWriter::EmitPhaseReason(ClauseId id, const std::vector<int>& clause,
                                        const PhaseImplication& imp) {
  const std::string cb = EmitCausing(imp.cause);
  const ReluTriple& r = q_.relus[imp.relu];
  const int var = imp.relu + 1;
  EmitReluAssumption(var);
  const std::string k = K(var);
  const Bound& cause = imp.cause.causing;
  const Rational& c = cause.value;
  auto taut = [&](const std::string& a, const std::string& b) {
    const std::string t1 = Emit({"", {Or2(a, b)}, "la_tautology", {}, {}});
    return Emit({"", {a, b}, "or", {t1}, {}});
  };
  std::vector<std::string> premises;
  if (imp.literal.positive && cause.var == r.b && cause.kind == BoundKind::kLower) {
    premises = {taut(Not(BoundAtom(r.b, BoundKind::kUpper, 0)), Not(BoundAtom(r.b, BoundKind::kLower, c))),
                "si_" + k, "s_" + k, cb};
  } else if (imp.literal.positive && cause.var == r.f && cause.kind == BoundKind::kLower) {
    premises = {taut(Not(BoundAtom(r.f, BoundKind::kUpper, 0)), Not(BoundAtom(r.f, BoundKind::kLower, c))),
                "sif_" + k, "s_" + k, cb};
  } else if (!imp.literal.positive && cause.var == r.b && cause.kind == BoundKind::kUpper) {
    premises = {taut(Not(BoundAtom(r.b, BoundKind::kLower, 0)), Not(BoundAtom(r.b, BoundKind::kUpper, c))),
                "sab_" + k, cb};
  } else {
    throw std::logic_error("unsupported phase implication");
  }
  ClauseTerms(clause);
  const std::string step = ResolutionStep(premises);
  CheckSame(clause_of_[step], clause);
  steps_[id] = step;
}

}  // namespace reluproof
