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

#include "reluproof/model.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace reluproof {

int Network::input_dim() const {
  return layers.empty() ? 0 : static_cast<int>(layers.front().weights.cols());
}

int Network::output_dim() const {
  return layers.empty() ? 0 : static_cast<int>(layers.back().weights.rows());
}

int Network::num_relus() const {
  int count = 0;
  for (const Layer& layer : layers)
    if (layer.activation == Activation::kRelu) count += static_cast<int>(layer.weights.rows());
  return count;
}

void Network::Validate() const {
  if (layers.empty()) throw std::invalid_argument("network has no layers");
  for (size_t i = 0; i < layers.size(); ++i) {
    const Layer& layer = layers[i];
    if (layer.weights.rows() == 0 || layer.weights.cols() == 0)
      throw std::invalid_argument("layer " + std::to_string(i) + " has an empty weight matrix");
    if (layer.bias.size() != layer.weights.rows())
      throw std::invalid_argument("layer " + std::to_string(i) + ": bias has " +
                                  std::to_string(layer.bias.size()) + " entries, expected " +
                                  std::to_string(layer.weights.rows()));
    if (i > 0 && layer.weights.cols() != layers[i - 1].weights.rows())
      throw std::invalid_argument("layer " + std::to_string(i) + " expects " +
                                  std::to_string(layer.weights.cols()) + " inputs but layer " +
                                  std::to_string(i - 1) + " produces " +
                                  std::to_string(layers[i - 1].weights.rows()));
  }
  if (layers.back().activation != Activation::kIdentity)
    throw std::invalid_argument("the final layer must use the identity activation");
}

RationalVector EvalNetwork(const Network& net, const RationalVector& x) {
  if (x.size() != net.input_dim())
    throw std::invalid_argument("input has " + std::to_string(x.size()) + " entries, expected " +
                                std::to_string(net.input_dim()));
  RationalVector current = x;
  for (const Layer& layer : net.layers) {
    RationalVector next = layer.weights * current + layer.bias;
    if (layer.activation == Activation::kRelu)
      for (Eigen::Index i = 0; i < next.size(); ++i)
        if (next(i).sign() < 0) next(i) = Rational(0);
    current = std::move(next);
  }
  return current;
}

bool NormalizeClause(std::vector<Literal>& literals) {
  std::sort(literals.begin(), literals.end());
  literals.erase(std::unique(literals.begin(), literals.end()), literals.end());
  for (size_t i = 0; i + 1 < literals.size(); ++i)
    for (size_t j = i + 1; j < literals.size(); ++j)
      if (literals[i].var == literals[j].var) return false;
  return true;
}

void TableauQuery::Validate() const {
  if (static_cast<int>(lower.size()) != num_vars || static_cast<int>(upper.size()) != num_vars ||
      rows.cols() != num_vars)
    throw std::invalid_argument("tableau dimensions disagree with num_vars");
  for (int i = 0; i < num_vars; ++i)
    if (lower[i] && upper[i] && *upper[i] < *lower[i])
      throw std::invalid_argument("variable " + VarName(i) + " has l > u at construction");
  for (const ReluTriple& r : relus) {
    for (VarIndex v : {r.b, r.f, r.aux})
      if (v < 0 || v >= num_vars) throw std::invalid_argument("ReLU references unknown variable");
    bool has_row = false;
    for (int j = 0; j < num_rows() && !has_row; ++j) {
      bool match = rows(j, r.f) == Rational(1) && rows(j, r.b) == Rational(-1) &&
                   rows(j, r.aux) == Rational(-1);
      for (int i = 0; i < num_vars && match; ++i)
        if (i != r.b && i != r.f && i != r.aux && !rows(j, i).is_zero()) match = false;
      has_row = match;
    }
    if (!has_row) throw std::invalid_argument("ReLU without its f - b - aux = 0 row");
    if (!lower[r.f] || lower[r.f]->sign() < 0 || !lower[r.aux] || lower[r.aux]->sign() < 0)
      throw std::invalid_argument("ReLU f and aux need non-negative lower bounds");
  }
}

bool TableauQuery::AllBoundsFinite() const {
  return std::all_of(lower.begin(), lower.end(), [](const auto& b) { return b.has_value(); }) &&
         std::all_of(upper.begin(), upper.end(), [](const auto& b) { return b.has_value(); });
}

RationalVector Combination(const FarkasVector& w, const RationalMatrix& rows) {
  if (w.clash_var) return RationalVector::Zero(rows.cols());
  if (w.w.size() != rows.rows())
    throw std::invalid_argument("Farkas vector has " + std::to_string(w.w.size()) +
                                " entries but the tableau has " + std::to_string(rows.rows()) +
                                " rows");
  return rows.transpose() * w.w;
}

std::optional<Rational> ContradictionValue(const FarkasVector& w, const RationalMatrix& rows,
                                           const BoundVector& lower, const BoundVector& upper) {
  if (w.clash_var) {
    const VarIndex x = *w.clash_var;
    if (x < 0 || x >= rows.cols()) throw std::invalid_argument("clash variable out of range");
    if (!lower[x] || !upper[x]) return std::nullopt;
    return *upper[x] - *lower[x];
  }
  const RationalVector c = Combination(w, rows);
  Rational value;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const int s = c(i).sign();
    if (s == 0) continue;
    const std::optional<Rational>& bound = s > 0 ? upper[i] : lower[i];
    if (!bound) return std::nullopt;
    value += c(i) * *bound;
  }
  return value;
}

std::optional<Rational> ContradictionValue(const FarkasVector& w, const TableauQuery& q) {
  return ContradictionValue(w, q.rows, q.lower, q.upper);
}

bool CertifiesInfeasibility(const FarkasVector& w, const TableauQuery& q) {
  const std::optional<Rational> value = ContradictionValue(w, q);
  return value && value->sign() < 0;
}

const char* RuleName(ReluRule rule) {
  switch (rule) {
    case ReluRule::kLowerBToAuxZero: return "R1";
    case ReluRule::kUpperBToFZero: return "R2";
    case ReluRule::kUpperBToF: return "R3";
    case ReluRule::kLowerFToB: return "R4";
  }
  return "?";
}

bool SatisfiesQuery(const TableauQuery& q, const RationalVector& assignment, bool check_relus) {
  if (assignment.size() != q.num_vars) return false;
  for (int i = 0; i < q.num_vars; ++i) {
    if (q.lower[i] && assignment(i) < *q.lower[i]) return false;
    if (q.upper[i] && assignment(i) > *q.upper[i]) return false;
  }
  const RationalVector residual = q.rows * assignment;
  for (Eigen::Index j = 0; j < residual.size(); ++j)
    if (!residual(j).is_zero()) return false;
  if (check_relus)
    for (const ReluTriple& r : q.relus)
      if (assignment(r.f) != max(assignment(r.b), Rational(0))) return false;
  return true;
}

std::string VarName(VarIndex i) { return "x" + std::to_string(i); }

std::string RowTerm(const TableauQuery& q, int row) {
  std::vector<std::string> terms;
  for (int i = 0; i < q.num_vars; ++i) {
    const Rational& a = q.rows(row, i);
    if (a.is_zero()) continue;
    terms.push_back(a == Rational(1) ? VarName(i) : "(* " + a.ToSmtLib() + " " + VarName(i) + ")");
  }
  std::string lhs;
  if (terms.empty()) {
    lhs = "0";
  } else if (terms.size() == 1) {
    lhs = terms.front();
  } else {
    lhs = "(+";
    for (const std::string& t : terms) lhs += " " + t;
    lhs += ")";
  }
  return "(= " + lhs + " 0)";
}

std::string BoundAtom(VarIndex var, BoundKind kind, const Rational& value) {
  return std::string(kind == BoundKind::kLower ? "(>= " : "(<= ") + VarName(var) + " " +
         value.ToSmtLib() + ")";
}

std::string ActivePhaseTerm(const TableauQuery& q, int relu) {
  const ReluTriple& r = q.relus[relu];
  return "(and " + BoundAtom(r.b, BoundKind::kLower, 0) + " " +
         BoundAtom(r.aux, BoundKind::kUpper, 0) + ")";
}

std::string InactivePhaseTerm(const TableauQuery& q, int relu) {
  const ReluTriple& r = q.relus[relu];
  return "(and " + BoundAtom(r.b, BoundKind::kUpper, 0) + " " +
         BoundAtom(r.f, BoundKind::kUpper, 0) + ")";
}

std::string SerializeProblem(const TableauQuery& q) {
  std::ostringstream out;
  out << "(set-logic QF_LRA)\n";
  for (int i = 0; i < q.num_vars; ++i) out << "(declare-fun " << VarName(i) << " () Real)\n";
  for (int j = 0; j < q.num_rows(); ++j) out << "(assert " << RowTerm(q, j) << ")\n";
  for (int i = 0; i < q.num_vars; ++i) {
    if (q.lower[i]) out << "(assert " << BoundAtom(i, BoundKind::kLower, *q.lower[i]) << ")\n";
    if (q.upper[i]) out << "(assert " << BoundAtom(i, BoundKind::kUpper, *q.upper[i]) << ")\n";
  }
  for (size_t k = 0; k < q.relus.size(); ++k)
    out << "(assert (xor " << ActivePhaseTerm(q, static_cast<int>(k)) << " "
        << InactivePhaseTerm(q, static_cast<int>(k)) << "))\n";
  return out.str();
}

}  // namespace reluproof
