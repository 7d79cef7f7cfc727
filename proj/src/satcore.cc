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

#include "reluproof/satcore.h"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

namespace reluproof {

std::optional<std::vector<int>> ResolveChain(const std::vector<std::vector<int>>& clauses) {
  if (clauses.empty()) return std::nullopt;
  std::set<int> current(clauses[0].begin(), clauses[0].end());
  for (size_t i = 1; i < clauses.size(); ++i) {
    int pivot = 0;
    int pairs = 0;
    for (int lit : clauses[i]) {
      if (current.count(-lit)) {
        pivot = lit;
        ++pairs;
      }
    }
    if (pairs != 1) return std::nullopt;
    current.erase(-pivot);
    for (int lit : clauses[i])
      if (lit != pivot) current.insert(lit);
  }
  return std::vector<int>(current.begin(), current.end());
}

SatSolver::SatSolver(int num_vars)
    : num_vars_(num_vars),
      watches_(2 * static_cast<size_t>(num_vars) + 2),
      value_(num_vars + 1, 0),
      level_(num_vars + 1, 0),
      reason_(num_vars + 1, kNoReason) {}

int SatSolver::Value(int lit) const {
  const int v = value_[std::abs(lit)];
  return lit > 0 ? v : -v;
}

size_t SatSolver::WatchIndex(int lit) const {
  return 2 * static_cast<size_t>(std::abs(lit)) + (lit < 0 ? 1 : 0);
}

std::optional<std::vector<int>> SatSolver::clause(ClauseId id) const {
  if (id == 0 || id > clauses_.size()) return std::nullopt;
  return clauses_[id - 1].lits;
}

int SatSolver::model_value(int var) const {
  if (var < 1 || var > num_vars_ || model_.empty()) throw std::out_of_range("no model value");
  return model_[var - 1];
}

std::vector<int> SatSolver::model() const { return model_; }

ClauseId SatSolver::Store(std::vector<int> lits, bool watch) {
  clauses_.push_back(StoredClause{std::move(lits)});
  const ClauseId id = clauses_.size();
  const std::vector<int>& c = clauses_.back().lits;
  if (watch && c.size() >= 2) {
    watches_[WatchIndex(c[0])].push_back(id);
    watches_[WatchIndex(c[1])].push_back(id);
  }
  return id;
}

void SatSolver::Assign(int lit, ClauseId reason) {
  const int var = std::abs(lit);
  value_[var] = lit > 0 ? 1 : -1;
  level_[var] = decision_level();
  reason_[var] = reason;
  trail_.push_back(lit);
}

void SatSolver::NewLevel() {
  if (propagator_) propagator_->notify_new_decision_level();
  trail_lim_.push_back(trail_.size());
}

void SatSolver::Backtrack(int level) {
  if (level >= decision_level()) return;
  const size_t keep = trail_lim_[level];
  for (size_t i = trail_.size(); i > keep; --i) {
    const int var = std::abs(trail_[i - 1]);
    value_[var] = 0;
    reason_[var] = kNoReason;
  }
  trail_.resize(keep);
  trail_lim_.resize(level);
  qhead_ = std::min(qhead_, trail_.size());
  notified_ = std::min(notified_, trail_.size());
  if (propagator_) propagator_->notify_backtrack(static_cast<size_t>(level));
}

ClauseId SatSolver::Propagate() {
  while (qhead_ < trail_.size()) {
    const int falsified = -trail_[qhead_++];
    std::vector<ClauseId>& ws = watches_[WatchIndex(falsified)];
    size_t i = 0, j = 0;
    while (i < ws.size()) {
      const ClauseId id = ws[i++];
      std::vector<int>& c = clauses_[id - 1].lits;
      if (c[0] == falsified) std::swap(c[0], c[1]);
      if (Value(c[0]) == 1) {
        ws[j++] = id;
        continue;
      }
      bool moved = false;
      for (size_t k = 2; k < c.size(); ++k) {
        if (Value(c[k]) != -1) {
          std::swap(c[1], c[k]);
          watches_[WatchIndex(c[1])].push_back(id);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = id;
      if (Value(c[0]) == -1) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return id;
      }
      Assign(c[0], id);
      ++stats_.propagations;
    }
    ws.resize(j);
  }
  return kNoReason;
}

std::vector<int> SatSolver::ReadExternalClause(bool reason, int propagated) {
  std::vector<int> lits;
  const size_t limit = 4 * static_cast<size_t>(num_vars_) + 8;
  while (true) {
    const int lit = reason ? propagator_->cb_add_reason_clause_lit(propagated)
                           : propagator_->cb_add_external_clause_lit();
    if (lit == 0) break;
    if (std::abs(lit) > num_vars_)
      throw SatContractError("external clause literal " + std::to_string(lit) + " out of range");
    lits.push_back(lit);
    if (lits.size() > limit) throw SatContractError("external clause is not 0-terminated");
  }
  return lits;
}

ClauseId SatSolver::ReasonOf(int var) {
  if (reason_[var] != kExternalReason) return reason_[var];
  const int lit = value_[var] > 0 ? var : -var;
  std::vector<int> lits = ReadExternalClause(true, lit);
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  if (std::find(lits.begin(), lits.end(), lit) == lits.end())
    throw SatContractError("reason clause for " + std::to_string(lit) + " lacks the literal");
  for (int l : lits)
    if (l != lit && Value(l) != -1)
      throw SatContractError("reason clause for " + std::to_string(lit) + " is not unit");
  // Propagated literal first, then the false literal with the highest level.
  std::sort(lits.begin(), lits.end(), [&](int a, int b) {
    if (a == lit || b == lit) return a == lit && b != lit;
    return Level(a) > Level(b);
  });
  const ClauseId id = Store(lits, true);
  if (tracer_) tracer_->add_original_clause(id, lits, ClauseOrigin::kTheoryReason);
  reason_[var] = id;
  return id;
}

ClauseId SatSolver::Record(std::vector<int> lits, std::vector<ClauseId> chain) {
  if (check_chains_) {
    std::vector<std::vector<int>> premises;
    for (ClauseId id : chain) premises.push_back(clauses_[id - 1].lits);
    const auto replay = ResolveChain(premises);
    std::vector<int> expected = lits;
    std::sort(expected.begin(), expected.end());
    if (!replay || *replay != expected)
      throw SatContractError("learned clause does not replay from its chain");
  }
  const ClauseId id = Store(lits, true);
  derived_.push_back(DerivedClauseRecord{id, lits, chain});
  ++stats_.learned;
  if (tracer_) tracer_->add_derived_clause(id, lits, chain);
  return id;
}

bool SatSolver::Analyze(ClauseId conflict) {
  const int dl = decision_level();
  std::vector<char> seen(num_vars_ + 1, 0);
  std::vector<ClauseId> chain{conflict};
  std::vector<int> lower;  // literals below dl and above 0
  int count = 0;
  auto absorb = [&](ClauseId id, int pivot_var) {
    for (int l : clauses_[id - 1].lits) {
      const int v = std::abs(l);
      if (v == pivot_var || seen[v]) continue;
      seen[v] = 1;
      if (level_[v] == dl && dl > 0) {
        ++count;
      } else if (level_[v] > 0) {
        lower.push_back(l);
      }
    }
  };
  absorb(conflict, 0);

  size_t idx = trail_.size();
  int uip = 0;
  if (dl > 0) {
    while (true) {
      --idx;
      const int v = std::abs(trail_[idx]);
      if (!seen[v] || level_[v] != dl) continue;
      if (count == 1) {
        uip = -trail_[idx];
        break;
      }
      const ClauseId r = ReasonOf(v);
      chain.push_back(r);
      --count;
      absorb(r, v);
    }
  }
  // Resolve away level-0 literals in reverse trail order.
  while (idx > 0) {
    --idx;
    const int v = std::abs(trail_[idx]);
    if (!seen[v] || level_[v] != 0) continue;
    const ClauseId r = ReasonOf(v);
    chain.push_back(r);
    absorb(r, v);
  }

  if (dl == 0) {
    const ClauseId id = Record({}, chain);
    inconsistent_ = true;
    empty_clause_id_ = id;
    final_clause_.clear();
    final_clause_id_ = id;
    return false;
  }

  std::sort(lower.begin(), lower.end(), [&](int a, int b) { return Level(a) > Level(b); });
  std::vector<int> learned{uip};
  learned.insert(learned.end(), lower.begin(), lower.end());
  const int backjump = lower.empty() ? 0 : Level(lower.front());
  const ClauseId id = Record(learned, chain);
  Backtrack(backjump);
  Assign(uip, id);
  return true;
}

void SatSolver::DeriveFinal(int falsified_assumption) {
  const int start_var = std::abs(falsified_assumption);
  std::vector<char> seen(num_vars_ + 1, 0);
  seen[start_var] = 1;
  const ClauseId start = ReasonOf(start_var);
  std::vector<ClauseId> chain{start};
  std::vector<int> result{-falsified_assumption};
  auto absorb = [&](ClauseId id) {
    for (int l : clauses_[id - 1].lits) {
      const int v = std::abs(l);
      if (seen[v]) continue;
      seen[v] = 1;
    }
  };
  absorb(start);
  size_t idx = trail_.size();
  while (idx > 0) {
    --idx;
    const int lit = trail_[idx];
    const int v = std::abs(lit);
    if (v == start_var || !seen[v]) continue;
    if (reason_[v] == kNoReason) {
      result.push_back(-lit);  // an assumption decision
      continue;
    }
    const ClauseId r = ReasonOf(v);
    chain.push_back(r);
    absorb(r);
  }
  const ClauseId id = Record(result, chain);
  final_clause_ = result;
  final_clause_id_ = id;
}

bool SatSolver::IngestExternal(ClauseId id) {
  const std::vector<int>& c = clauses_[id - 1].lits;
  if (c.empty()) {
    inconsistent_ = true;
    empty_clause_id_ = id;
    final_clause_.clear();
    final_clause_id_ = id;
    return false;
  }
  if (c.size() == 1) {
    const int lit = c[0];
    if (Value(lit) == 1 && Level(lit) == 0) return true;
    Backtrack(0);
    if (Value(lit) == -1) return Analyze(id);
    Assign(lit, id);
    return true;
  }
  if (Value(c[0]) == -1) {
    Backtrack(Level(c[0]));
    return Analyze(id);
  }
  if (Value(c[0]) == 0 && Value(c[1]) == -1) Assign(c[0], id);
  return true;
}

void SatSolver::NotifyTrail() {
  if (!propagator_ || notified_ >= trail_.size()) return;
  std::vector<int> lits(trail_.begin() + static_cast<std::ptrdiff_t>(notified_), trail_.end());
  notified_ = trail_.size();
  propagator_->notify_assignment(lits);
}

ClauseId SatSolver::add_clause(const std::vector<int>& input) {
  std::vector<int> lits = input;
  for (int l : lits)
    if (l == 0 || std::abs(l) > num_vars_)
      throw std::invalid_argument("clause literal " + std::to_string(l) + " out of range");
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (size_t i = 0; i + 1 < lits.size(); ++i)
    for (size_t k = i + 1; k < lits.size(); ++k)
      if (lits[i] == -lits[k]) return 0;
  if (decision_level() > 0) Backtrack(0);
  // Watch order: true, then unassigned, then false by decreasing level.
  auto rank = [&](int l) { return Value(l) == 1 ? 0 : (Value(l) == 0 ? 1 : 2); };
  std::stable_sort(lits.begin(), lits.end(), [&](int a, int b) {
    if (rank(a) != rank(b)) return rank(a) < rank(b);
    return Level(a) > Level(b);
  });
  const ClauseId id = Store(lits, true);
  if (tracer_) tracer_->add_original_clause(id, lits, ClauseOrigin::kInput);
  if (!inconsistent_) IngestExternal(id);
  return id;
}

SatResult SatSolver::solve(const std::vector<int>& assumptions) {
  model_.clear();
  for (int a : assumptions) {
    if (a == 0 || std::abs(a) > num_vars_)
      throw std::invalid_argument("assumption " + std::to_string(a) + " out of range");
    if (std::find(assumptions.begin(), assumptions.end(), -a) != assumptions.end())
      throw std::invalid_argument("contradictory assumptions");
  }
  if (inconsistent_) {
    final_clause_.clear();
    final_clause_id_ = empty_clause_id_;
    return SatResult::kUnsat;
  }
  bool model_checked = false;
  size_t checked_epoch = 0;
  size_t epoch = 0;  // changes whenever the trail does
  size_t last_trail = static_cast<size_t>(-1);

  while (true) {
    if (Stopped()) return SatResult::kUnknown;
    const ClauseId conflict = Propagate();
    if (conflict != kNoReason) {
      ++stats_.conflicts;
      if (!Analyze(conflict)) return SatResult::kUnsat;
      ++epoch;
      continue;
    }
    NotifyTrail();
    if (trail_.size() != last_trail) {
      last_trail = trail_.size();
      ++epoch;
    }
    if (propagator_) {
      if (propagator_->cb_has_external_clause()) {
        std::vector<int> lits = ReadExternalClause(false, 0);
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        bool tautology = false;
        for (size_t i = 0; i + 1 < lits.size(); ++i)
          if (std::binary_search(lits.begin() + static_cast<std::ptrdiff_t>(i) + 1, lits.end(), -lits[i]))
            tautology = true;
        if (tautology) continue;
        auto rank = [&](int l) { return Value(l) == 1 ? 0 : (Value(l) == 0 ? 1 : 2); };
        std::stable_sort(lits.begin(), lits.end(), [&](int a, int b) {
          if (rank(a) != rank(b)) return rank(a) < rank(b);
          return Level(a) > Level(b);
        });
        ++stats_.conflicts;
        const ClauseId id = Store(lits, true);
        if (tracer_) tracer_->add_original_clause(id, lits, ClauseOrigin::kTheoryConflict);
        if (!IngestExternal(id)) return SatResult::kUnsat;
        ++epoch;
        continue;
      }
      const int lit = propagator_->cb_propagate();
      if (lit != 0) {
        if (std::abs(lit) > num_vars_)
          throw SatContractError("propagated literal " + std::to_string(lit) + " out of range");
        if (Value(lit) == 0) {
          Assign(lit, kExternalReason);
          ++stats_.propagations;
        } else if (Value(lit) == -1) {
          // The reason clause is falsified: handle it as a conflict.
          std::vector<int> lits = ReadExternalClause(true, lit);
          std::sort(lits.begin(), lits.end());
          lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
          for (int l : lits)
            if (Value(l) != -1) throw SatContractError("reason clause of a false literal is not falsified");
          std::sort(lits.begin(), lits.end(), [&](int a, int b) { return Level(a) > Level(b); });
          ++stats_.conflicts;
          const ClauseId id = Store(lits, true);
          if (tracer_) tracer_->add_original_clause(id, lits, ClauseOrigin::kTheoryReason);
          if (!IngestExternal(id)) return SatResult::kUnsat;
          ++epoch;
        }
        continue;
      }
    }

    // Assumptions first, so a full trail from propagation cannot skip them.
    const size_t dl = static_cast<size_t>(decision_level());
    if (dl < assumptions.size()) {
      const int a = assumptions[dl];
      if (Value(a) == 1) {
        NewLevel();
        continue;
      }
      if (Value(a) == -1) {
        DeriveFinal(a);
        return SatResult::kUnsat;
      }
      NewLevel();
      Assign(a, kNoReason);
      ++stats_.decisions;
      continue;
    }
    if (trail_.size() == static_cast<size_t>(num_vars_)) {
      if (!propagator_) {
        model_ = trail_;
        std::sort(model_.begin(), model_.end(), [](int a, int b) { return std::abs(a) < std::abs(b); });
        return SatResult::kSat;
      }
      if (model_checked && checked_epoch == epoch)
        throw SatContractError("model rejected without an external clause");
      std::vector<int> model = trail_;
      std::sort(model.begin(), model.end(), [](int a, int b) { return std::abs(a) < std::abs(b); });
      model_checked = true;
      checked_epoch = epoch;
      if (propagator_->cb_check_found_model(model)) {
        model_ = std::move(model);
        return SatResult::kSat;
      }
      continue;
    }

    // Decide.
    int lit = propagator_ ? propagator_->cb_decide() : 0;
    if (lit != 0 && (std::abs(lit) > num_vars_ || Value(lit) != 0)) lit = 0;
    if (lit == 0) {
      for (int v = 1; v <= num_vars_; ++v) {
        if (value_[v] == 0) {
          lit = v;
          break;
        }
      }
    }
    NewLevel();
    Assign(lit, kNoReason);
    ++stats_.decisions;
  }
}

}  // namespace reluproof
