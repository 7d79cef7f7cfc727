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

#include "reluproof/tsolver.h"

#include <stdexcept>
#include <string>

namespace reluproof {

// ---------------------------------------------------------------------------
// BoundStore

BoundStore::BoundStore(int num_vars) : lower_(num_vars), upper_(num_vars) {}

bool BoundStore::Tighten(const Bound& b) {
  auto& stack = b.kind == BoundKind::kLower ? lower_[b.var] : upper_[b.var];
  if (!stack.empty()) {
    const Rational& current = stack.back().value;
    if (b.kind == BoundKind::kLower ? !(current < b.value) : !(b.value < current)) return false;
  }
  stack.push_back(b);
  log_.emplace_back(b.var, b.kind);
  return true;
}

void BoundStore::Push() { marks_.push_back(log_.size()); }

void BoundStore::Pop(int level) {
  if (level < 0) throw std::logic_error("pop below the root context");
  if (level >= depth()) return;
  const size_t keep = marks_[level];
  while (log_.size() > keep) {
    const auto [var, kind] = log_.back();
    log_.pop_back();
    (kind == BoundKind::kLower ? lower_[var] : upper_[var]).pop_back();
  }
  marks_.resize(level);
}

BoundVector BoundStore::LowerValues() const {
  BoundVector out(lower_.size());
  for (size_t i = 0; i < lower_.size(); ++i)
    if (!lower_[i].empty()) out[i] = lower_[i].back().value;
  return out;
}

BoundVector BoundStore::UpperValues() const {
  BoundVector out(upper_.size());
  for (size_t i = 0; i < upper_.size(); ++i)
    if (!upper_[i].empty()) out[i] = upper_[i].back().value;
  return out;
}

namespace {

bool SameRecords(const std::vector<std::vector<Bound>>& a, const std::vector<std::vector<Bound>>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (size_t k = 0; k < a[i].size(); ++k) {
      const Bound& x = a[i][k];
      const Bound& y = b[i][k];
      if (x.var != y.var || x.kind != y.kind || x.value != y.value || x.chrono_id != y.chrono_id ||
          x.source.kind != y.source.kind || x.source.literal != y.source.literal ||
          x.source.lemma_id != y.source.lemma_id)
        return false;
    }
  }
  return true;
}

}  // namespace

bool BoundStore::SameStacks(const BoundStore& other) const {
  return SameRecords(lower_, other.lower_) && SameRecords(upper_, other.upper_);
}

// ---------------------------------------------------------------------------
// TSolver

TSolver::TSolver(const TableauQuery& q, TSolverOptions options)
    : q_(q), options_(std::move(options)), store_(q.num_vars), phase_(q.relus.size(), 0) {
  for (VarIndex i = 0; i < q_.num_vars; ++i) {
    if (q_.lower[i])
      store_.Tighten(Bound{i, BoundKind::kLower, *q_.lower[i], BoundSource::Input(), NextChrono()});
    if (q_.upper[i])
      store_.Tighten(Bound{i, BoundKind::kUpper, *q_.upper[i], BoundSource::Input(), NextChrono()});
  }
  const int m = q_.num_rows();
  const int n = q_.num_vars;
  rows_of_var_.resize(n);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i)
      if (!q_.rows(j, i).is_zero()) rows_of_var_[i].push_back(j);

  // Initial basis: each row in turn pivots on its highest-index free column.
  m_ = q_.rows;
  t_ = RationalMatrix::Identity(m, m);
  basic_.assign(m, -1);
  row_of_basic_.assign(n, -1);
  for (int j = 0; j < m; ++j) {
    VarIndex entering = -1;
    for (int i = n - 1; i >= 0 && entering < 0; --i)
      if (row_of_basic_[i] < 0 && !m_(j, i).is_zero()) entering = i;
    if (entering < 0) throw std::invalid_argument("tableau rows are linearly dependent");
    Pivot(j, entering);
  }
  x_ = RationalVector::Zero(n);
  RecomputeBasics();

  nodes_.push_back(ProofNode{0, -1, std::nullopt, {}, {}});
  node_stack_.push_back(0);
}

void TSolver::Pivot(int row, VarIndex entering) {
  const int m = static_cast<int>(m_.rows());
  const int n = static_cast<int>(m_.cols());
  const Rational inv = Rational(1) / m_(row, entering);
  for (int i = 0; i < n; ++i)
    if (!m_(row, i).is_zero()) m_(row, i) *= inv;
  for (int i = 0; i < m; ++i)
    if (!t_(row, i).is_zero()) t_(row, i) *= inv;
  for (int k = 0; k < m; ++k) {
    if (k == row || m_(k, entering).is_zero()) continue;
    const Rational f = m_(k, entering);
    for (int i = 0; i < n; ++i)
      if (!m_(row, i).is_zero()) m_(k, i) -= f * m_(row, i);
    for (int i = 0; i < m; ++i)
      if (!t_(row, i).is_zero()) t_(k, i) -= f * t_(row, i);
  }
  if (basic_[row] >= 0) row_of_basic_[basic_[row]] = -1;
  basic_[row] = entering;
  row_of_basic_[entering] = row;
}

void TSolver::RecomputeBasics() {
  const int m = static_cast<int>(m_.rows());
  const int n = static_cast<int>(m_.cols());
  for (int j = 0; j < m; ++j) {
    Rational v;
    for (int i = 0; i < n; ++i)
      if (row_of_basic_[i] < 0 && !m_(j, i).is_zero()) v -= m_(j, i) * x_(i);
    x_(basic_[j]) = v;
  }
}

void TSolver::push_context() {
  store_.Push();
  phase_marks_.push_back(phase_log_.size());
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(ProofNode{id, node_stack_.back(), std::nullopt, {}, {}});
  node_stack_.push_back(id);
}

void TSolver::pop_context(int level) {
  if (level < 0) throw std::logic_error("pop below the root context");
  if (level >= depth()) return;
  store_.Pop(level);
  while (phase_log_.size() > phase_marks_[level]) {
    phase_[phase_log_.back()] = 0;
    phase_log_.pop_back();
  }
  phase_marks_.resize(level);
  node_stack_.resize(level + 1);
}

bool TSolver::Clashing(VarIndex var) const {
  const Bound* lo = store_.lower(var);
  const Bound* hi = store_.upper(var);
  return lo && hi && hi->value < lo->value;
}

int TSolver::AddCertificate(FarkasVector w) {
  const int ordinal = static_cast<int>(certificates_.size()) + 1;
  const bool faulty = options_.fault_certificates.count(ordinal) > 0;
  if (faulty) {
    if (w.clash_var) {
      w.clash_var.reset();
    } else {
      Eigen::Index first = 0;
      while (first < w.w.size() && w.w(first).is_zero()) ++first;
      if (first < w.w.size()) w.w(first) += Rational(1);
      const auto v = ContradictionValue(w, q_.rows, store_.LowerValues(), store_.UpperValues());
      if (v && v->sign() < 0) w.w.setZero();
    }
  }
  Certificate cert;
  cert.node = node_stack_.back();
  if (w.clash_var) {
    cert.support.push_back(*store_.lower(*w.clash_var));
    cert.support.push_back(*store_.upper(*w.clash_var));
  } else {
    const RationalVector c = Combination(w, q_.rows);
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      if (c(i).is_zero()) continue;
      const Bound* b = c(i).sign() > 0 ? store_.upper(static_cast<VarIndex>(i))
                                        : store_.lower(static_cast<VarIndex>(i));
      if (b) cert.support.push_back(*b);
    }
  }
  const auto value = ContradictionValue(w, q_.rows, store_.LowerValues(), store_.UpperValues());
  cert.hole = !(value && value->sign() < 0);
  if (cert.hole && !faulty)
    throw std::logic_error("infeasibility certificate failed its exact sanity check");
  cert.w = std::move(w);
  certificates_.push_back(std::move(cert));
  const int index = static_cast<int>(certificates_.size()) - 1;
  nodes_[node_stack_.back()].certificates.push_back(index);
  return index;
}

int TSolver::ClashCertificate(VarIndex var) {
  FarkasVector w = FarkasVector::Zero(q_.num_rows());
  w.clash_var = var;
  return AddCertificate(std::move(w));
}

std::optional<int> TSolver::assert_phase(Literal lit) {
  const int relu = lit.relu();
  if (relu < 0 || relu >= static_cast<int>(q_.relus.size()))
    throw std::out_of_range("literal " + std::to_string(lit.ToInt()) + " names no ReLU");
  const int want = lit.positive ? 1 : -1;
  if (phase_[relu] == want) return std::nullopt;
  if (phase_[relu] != 0) throw std::logic_error("ReLU phase asserted twice with opposite signs");
  phase_[relu] = want;
  phase_log_.push_back(relu);
  ProofNode& node = nodes_[node_stack_.back()];
  if (!node.literal) node.literal = lit;

  const ReluTriple& r = q_.relus[relu];
  const BoundSource source = BoundSource::Decision(lit);
  std::vector<VarIndex> touched;
  if (lit.positive) {
    store_.Tighten(Bound{r.b, BoundKind::kLower, Rational(0), source, NextChrono()});
    store_.Tighten(Bound{r.aux, BoundKind::kUpper, Rational(0), source, NextChrono()});
    touched = {r.b, r.aux};
  } else {
    store_.Tighten(Bound{r.b, BoundKind::kUpper, Rational(0), source, NextChrono()});
    store_.Tighten(Bound{r.f, BoundKind::kUpper, Rational(0), source, NextChrono()});
    touched = {r.b, r.f};
  }
  for (VarIndex v : touched)
    if (Clashing(v)) return ClashCertificate(v);
  return std::nullopt;
}

FeasibilityResult TSolver::check_feasible() {
  FeasibilityResult result;
  const int n = q_.num_vars;
  for (VarIndex i = 0; i < n; ++i) {
    if (Clashing(i)) {
      result.certificate = ClashCertificate(i);
      return result;
    }
  }
  for (VarIndex i = 0; i < n; ++i) {
    if (row_of_basic_[i] >= 0) continue;
    const Bound* lo = store_.lower(i);
    const Bound* hi = store_.upper(i);
    if (lo && x_(i) < lo->value) x_(i) = lo->value;
    if (hi && hi->value < x_(i)) x_(i) = hi->value;
  }
  RecomputeBasics();

  for (int iteration = 0;; ++iteration) {
    if (iteration > 1000000) throw std::logic_error("simplex failed to terminate");
    VarIndex violated = -1;
    bool below = false;
    for (VarIndex i = 0; i < n && violated < 0; ++i) {
      if (row_of_basic_[i] < 0) continue;
      const Bound* lo = store_.lower(i);
      const Bound* hi = store_.upper(i);
      if (lo && x_(i) < lo->value) {
        violated = i;
        below = true;
      } else if (hi && hi->value < x_(i)) {
        violated = i;
        below = false;
      }
    }
    if (violated < 0) {
      result.feasible = true;
      result.witness = x_;
      TableauQuery current = q_;
      current.lower = store_.LowerValues();
      current.upper = store_.UpperValues();
      if (!SatisfiesQuery(current, x_, false))
        throw std::logic_error("simplex witness violates the current bounds");
      return result;
    }
    const int row = row_of_basic_[violated];
    VarIndex entering = -1;
    for (VarIndex j = 0; j < n && entering < 0; ++j) {
      if (row_of_basic_[j] >= 0 || m_(row, j).is_zero()) continue;
      const int effect = -m_(row, j).sign();  // sign of d x_violated / d x_j
      const Bound* lo = store_.lower(j);
      const Bound* hi = store_.upper(j);
      const bool can_increase = !hi || x_(j) < hi->value;
      const bool can_decrease = !lo || lo->value < x_(j);
      const bool ok = below ? (effect > 0 ? can_increase : can_decrease)
                            : (effect > 0 ? can_decrease : can_increase);
      if (ok) entering = j;
    }
    if (entering < 0) {
      FarkasVector w{RationalVector(t_.row(row).transpose()), std::nullopt};
      if (below) w.w = -w.w;
      result.certificate = AddCertificate(std::move(w));
      return result;
    }
    Pivot(row, entering);
    x_(violated) = below ? store_.lower(violated)->value : store_.upper(violated)->value;
    RecomputeBasics();
  }
}

std::optional<CausingProof> TSolver::ImpliedBound(int row, VarIndex var, BoundKind kind) {
  const Rational a = q_.rows(row, var);
  if (a.is_zero()) return std::nullopt;
  const Rational scale = Rational(-1) / a;
  CausingProof proof;
  Rational value;
  for (VarIndex i = 0; i < q_.num_vars; ++i) {
    if (i == var || q_.rows(row, i).is_zero()) continue;
    const Rational c = q_.rows(row, i) * scale;
    const bool use_lower = (kind == BoundKind::kLower) == (c.sign() > 0);
    const Bound* b = use_lower ? store_.lower(i) : store_.upper(i);
    if (!b) return std::nullopt;
    value += c * b->value;
    proof.support.push_back(*b);
  }
  proof.w = FarkasVector::Zero(q_.num_rows());
  proof.w.w(row) = scale;
  proof.causing = Bound{var, kind, value, BoundSource::Input(), 0};
  return proof;
}

std::optional<CausingProof> TSolver::EffectiveBound(VarIndex var, BoundKind kind) {
  std::optional<CausingProof> best;
  if (const Bound* b = store_.get(var, kind)) {
    best = CausingProof{*b, FarkasVector{}, {*b}};
  }
  for (int row : rows_of_var_[var]) {
    std::optional<CausingProof> implied = ImpliedBound(row, var, kind);
    if (!implied) continue;
    const Rational& v = implied->causing.value;
    const bool tighter =
        !best || (kind == BoundKind::kLower ? best->causing.value < v : v < best->causing.value);
    if (tighter) best = std::move(implied);
  }
  return best;
}

int TSolver::Derive(int relu, ReluRule rule, const CausingProof& cause, VarIndex var,
                    BoundKind kind, const Rational& value, PropagationResult* out, bool* tightened) {
  *tightened = false;
  if (const Bound* current = store_.get(var, kind)) {
    const bool tighter = kind == BoundKind::kLower ? current->value < value : value < current->value;
    if (!tighter) return -1;
  }
  Lemma lemma;
  lemma.relu = relu;
  lemma.rule = rule;
  lemma.cause = cause;
  if (!cause.direct()) lemma.cause.causing.chrono_id = NextChrono();
  const ChronoId id = NextChrono();
  lemma.lemma_id = static_cast<int>(id);
  lemma.derived = Bound{var, kind, value, BoundSource::FromLemma(lemma.lemma_id), id};
  store_.Tighten(lemma.derived);
  lemma_index_[lemma.lemma_id] = lemmas_.size();
  lemmas_.push_back(std::move(lemma));
  nodes_[node_stack_.back()].lemma_ids.push_back(static_cast<int>(id));
  out->new_lemmas.push_back(static_cast<int>(id));
  *tightened = true;
  if (Clashing(var)) return ClashCertificate(var);
  return -1;
}

PropagationResult TSolver::propagate_relu_lemmas() {
  PropagationResult out;
  const Rational zero(0);
  for (int round = 0; round < options_.max_propagation_rounds; ++round) {
    bool changed = false;
    for (int k = 0; k < static_cast<int>(q_.relus.size()); ++k) {
      const ReluTriple& r = q_.relus[k];
      bool tightened = false;
      int cert = -1;
      if (auto lb = EffectiveBound(r.b, BoundKind::kLower); lb && lb->causing.value.sign() >= 0) {
        cert = Derive(k, ReluRule::kLowerBToAuxZero, *lb, r.aux, BoundKind::kUpper, zero, &out,
                      &tightened);
        changed |= tightened;
      }
      if (cert < 0) {
        if (auto ub = EffectiveBound(r.b, BoundKind::kUpper); ub && ub->causing.value.sign() <= 0) {
          cert = Derive(k, ReluRule::kUpperBToFZero, *ub, r.f, BoundKind::kUpper, zero, &out,
                        &tightened);
          changed |= tightened;
        }
      }
      if (cert < 0) {
        if (auto ub = EffectiveBound(r.b, BoundKind::kUpper); ub && ub->causing.value.sign() > 0) {
          cert = Derive(k, ReluRule::kUpperBToF, *ub, r.f, BoundKind::kUpper, ub->causing.value,
                        &out, &tightened);
          changed |= tightened;
        }
      }
      if (cert < 0) {
        if (auto lf = EffectiveBound(r.f, BoundKind::kLower); lf && lf->causing.value.sign() > 0) {
          cert = Derive(k, ReluRule::kLowerFToB, *lf, r.b, BoundKind::kLower, lf->causing.value,
                        &out, &tightened);
          changed |= tightened;
        }
      }
      if (cert >= 0) {
        out.certificate = cert;
        return out;
      }
    }
    if (!changed) break;
  }

  for (int k = 0; k < static_cast<int>(q_.relus.size()); ++k) {
    if (phase_[k] != 0) continue;
    const ReluTriple& r = q_.relus[k];
    if (auto lb = EffectiveBound(r.b, BoundKind::kLower); lb && lb->causing.value.sign() > 0) {
      out.implications.push_back(PhaseImplication{Literal{k + 1, true}, k, std::move(*lb)});
    } else if (auto lf = EffectiveBound(r.f, BoundKind::kLower); lf && lf->causing.value.sign() > 0) {
      out.implications.push_back(PhaseImplication{Literal{k + 1, true}, k, std::move(*lf)});
    } else if (auto ub = EffectiveBound(r.b, BoundKind::kUpper); ub && ub->causing.value.sign() < 0) {
      out.implications.push_back(PhaseImplication{Literal{k + 1, false}, k, std::move(*ub)});
    }
  }
  return out;
}

}  // namespace reluproof
