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

#include "reluproof/proofwriter.h"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace reluproof {

ReductionTriple ReduceFarkas(const FarkasVector& w, const RationalMatrix& rows,
                             const BoundVector& lower, const BoundVector& upper) {
  const std::optional<Rational> value = ContradictionValue(w, rows, lower, upper);
  if (!value || value->sign() >= 0) throw std::invalid_argument("not an infeasibility certificate");
  const int n = static_cast<int>(rows.cols());
  ReductionTriple t{RationalVector::Zero(rows.rows()), RationalVector::Zero(n),
                    RationalVector::Zero(n)};
  if (w.clash_var) {
    t.w2(*w.clash_var) = 1;
    t.w3(*w.clash_var) = 1;
    return t;
  }
  t.w1 = w.w;
  const RationalVector c = Combination(w, rows);
  for (int i = 0; i < n; ++i) {
    if (c(i).sign() < 0) t.w2(i) = -c(i);
    if (c(i).sign() > 0) t.w3(i) = c(i);
  }
  return t;
}

ReductionTriple ReduceFarkas(const FarkasVector& w, const TableauQuery& q) {
  return ReduceFarkas(w, q.rows, q.lower, q.upper);
}

std::optional<Rational> TripleCombination(const ReductionTriple& t, const RationalMatrix& rows,
                                          const BoundVector& lower, const BoundVector& upper) {
  const int n = static_cast<int>(rows.cols());
  RationalVector coeff = rows.transpose() * t.w1;
  Rational constant = 0;
  for (int i = 0; i < n; ++i) {
    if (!t.w2(i).is_zero()) {
      if (!lower[i]) return std::nullopt;
      coeff(i) += t.w2(i);
      constant -= t.w2(i) * *lower[i];
    }
    if (!t.w3(i).is_zero()) {
      if (!upper[i]) return std::nullopt;
      coeff(i) -= t.w3(i);
      constant += t.w3(i) * *upper[i];
    }
  }
  for (int i = 0; i < n; ++i)
    if (!coeff(i).is_zero()) throw std::invalid_argument("combination is not constant");
  return constant;
}

std::string AletheStep::ToString() const {
  if (rule == "assume") return "(assume " + id + " " + clause.front() + ")";
  std::string s = "(step " + id + " (cl";
  for (const std::string& l : clause) s += " " + l;
  s += ") :rule " + rule;
  if (!premises.empty()) {
    s += " :premises (";
    for (size_t i = 0; i < premises.size(); ++i) s += (i ? " " : "") + premises[i];
    s += ")";
  }
  if (!args.empty()) {
    s += " :args (";
    for (size_t i = 0; i < args.size(); ++i) s += (i ? " " : "") + args[i];
    s += ")";
  }
  return s + ")";
}

ProofSink::ProofSink(std::ostream* out) : out_(out) {}

std::string ProofSink::NewId() { return "t" + std::to_string(++next_id_); }

namespace {

std::string IdOfLine(const std::string& line) {
  const size_t start = line.find(' ');
  if (start == std::string::npos) return "";
  const size_t end = line.find(' ', start + 1);
  return line.substr(start + 1, end - start - 1);
}

}  // namespace

void ProofSink::Append(const std::vector<std::string>& lines) {
  std::lock_guard<std::mutex> lock(mu_);
  if (closed_.load()) return;
  for (const std::string& line : lines) {
    if (out_) *out_ << line << '\n';
    last_id_ = IdOfLine(line);
  }
  lines_ += static_cast<int64_t>(lines.size());
}

void ProofSink::AppendOnce(const std::string& key,
                           const std::function<std::vector<std::string>()>& make) {
  std::lock_guard<std::mutex> lock(mu_);
  if (closed_.load() || !done_.insert(key).second) return;
  const std::vector<std::string> lines = make();
  for (const std::string& line : lines) {
    if (out_) *out_ << line << '\n';
    last_id_ = IdOfLine(line);
  }
  lines_ += static_cast<int64_t>(lines.size());
}

void ProofSink::Close() {
  std::lock_guard<std::mutex> lock(mu_);
  closed_ = true;
  if (out_) out_->flush();
}

std::string ProofSink::last_id() {
  std::lock_guard<std::mutex> lock(mu_);
  return last_id_;
}

std::string RowStepId(int row) { return "r" + std::to_string(row); }

std::string BoundStepId(VarIndex var, BoundKind kind) {
  return (kind == BoundKind::kLower ? "l" : "u") + std::to_string(var);
}

std::string PhaseName(int var) { return "active_" + std::to_string(var); }

std::string PhaseLiteral(int lit) {
  return lit > 0 ? PhaseName(lit) : "(not " + PhaseName(-lit) + ")";
}

void EmitProblemAssumptions(const TableauQuery& q, ProofSink* sink) {
  std::vector<std::string> lines;
  for (int j = 0; j < q.num_rows(); ++j)
    lines.push_back("(assume " + RowStepId(j) + " " + RowTerm(q, j) + ")");
  for (int i = 0; i < q.num_vars; ++i) {
    if (q.lower[i])
      lines.push_back("(assume " + BoundStepId(i, BoundKind::kLower) + " " +
                      BoundAtom(i, BoundKind::kLower, *q.lower[i]) + ")");
    if (q.upper[i])
      lines.push_back("(assume " + BoundStepId(i, BoundKind::kUpper) + " " +
                      BoundAtom(i, BoundKind::kUpper, *q.upper[i]) + ")");
  }
  sink->Append(lines);
}

std::optional<WeakeningAtom> PickWeakeningAtom(const TableauQuery& q, const Certificate& cert,
                                               Literal decision) {
  const ReluTriple& r = q.relus[decision.relu()];
  std::vector<std::pair<VarIndex, BoundKind>> candidates;
  if (decision.positive) {
    candidates = {{r.b, BoundKind::kLower}, {r.aux, BoundKind::kUpper}};
  } else {
    candidates = {{r.f, BoundKind::kUpper}, {r.b, BoundKind::kUpper}};
  }
  for (const auto& [var, kind] : candidates) {
    const bool present = std::any_of(cert.support.begin(), cert.support.end(), [&](const Bound& b) {
      return b.var == var && b.kind == kind && b.value.is_zero();
    });
    if (!present) return WeakeningAtom{decision, var, kind};
  }
  return std::nullopt;
}

namespace {

struct Merged {
  std::string step;
  std::vector<int> clause;
};

bool Contains(const std::vector<int>& c, int lit) {
  return std::find(c.begin(), c.end(), lit) != c.end();
}

std::string ClauseText(const std::vector<int>& clause) {
  std::string s = "(cl";
  for (int lit : clause) s += " " + PhaseLiteral(lit);
  return s + ")";
}

Merged MergeCubes(const std::vector<int>& split_vars, const std::vector<SubproofResult>& results,
                  std::vector<int>& prefix, ProofSink* sink) {
  if (prefix.size() == split_vars.size()) {
    for (const SubproofResult& r : results)
      if (r.cube == prefix) return Merged{r.step, r.clause};
    throw std::logic_error("missing subproof for a cube");
  }
  const int v = split_vars[prefix.size()];
  prefix.push_back(v);
  const Merged left = MergeCubes(split_vars, results, prefix, sink);
  prefix.back() = -v;
  const Merged right = MergeCubes(split_vars, results, prefix, sink);
  prefix.pop_back();
  if (!Contains(left.clause, -v)) return left;
  if (!Contains(right.clause, v)) return right;
  Merged out;
  for (int lit : left.clause)
    if (lit != -v) out.clause.push_back(lit);
  for (int lit : right.clause)
    if (lit != v && !Contains(out.clause, lit)) out.clause.push_back(lit);
  out.step = sink->NewId();
  sink->Append({"(step " + out.step + " " + ClauseText(out.clause) +
                " :rule resolution :premises (" + left.step + " " + right.step + "))"});
  return out;
}

}  // namespace

std::string EmitSncConclusion(const std::vector<int>& split_vars,
                              const std::vector<SubproofResult>& results, ProofSink* sink) {
  std::vector<int> prefix;
  const Merged top = MergeCubes(split_vars, results, prefix, sink);
  if (!top.clause.empty()) throw std::logic_error("split subproofs do not cover all cubes");
  return EmitFinalStep(top.step, sink);
}

std::string EmitFinalStep(const std::string& step, ProofSink* sink) {
  if (sink->last_id() == step) return step;
  const std::string id = sink->NewId();
  sink->Append({"(step " + id + " (cl) :rule resolution :premises (" + step + "))"});
  return id;
}

}  // namespace reluproof
