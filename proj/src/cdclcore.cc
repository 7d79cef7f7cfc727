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

#include "reluproof/cdclcore.h"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace reluproof {

CdclCore::CdclCore(TSolver* tsolver, const AbstractionMap& abstraction, AletheProofWriter* writer,
                   CdclOptions options)
    : ts_(tsolver), abstraction_(abstraction), writer_(writer), options_(options) {
  const int n = abstraction_.num_vars();
  if (n != static_cast<int>(ts_->query().relus.size()))
    throw std::invalid_argument("abstraction does not match the query");
  for (int k = 1; k <= n; ++k)
    if (abstraction_.relu_of_var[k] != k - 1)
      throw std::invalid_argument("Boolean variable " + std::to_string(k) + " is not bound to ReLU " +
                                  std::to_string(k - 1));
  value_.assign(n + 1, 0);
  score_.assign(n + 1, 0.0);
}

void CdclCore::notify_assignment(const std::vector<int>& lits) {
  for (int lit : lits) {
    const int var = std::abs(lit);
    value_[var] = lit > 0 ? 1 : -1;
    assigned_.emplace_back(lit, level_);
    const std::optional<int> clash = ts_->assert_phase(Literal::FromInt(lit));
    if (clash) SetConflict(*clash);
  }
  dirty_ = true;
}

void CdclCore::notify_new_decision_level() {
  ++level_;
  ts_->push_context();
}

void CdclCore::notify_backtrack(size_t new_level) {
  const int l = static_cast<int>(new_level);
  ts_->pop_context(l);
  level_ = l;
  while (!assigned_.empty() && assigned_.back().second > l) {
    value_[std::abs(assigned_.back().first)] = 0;
    assigned_.pop_back();
  }
  std::erase_if(queue_, [l](const Queued& q) { return q.level > l; });
  std::erase_if(propagated_, [l](const auto& e) { return e.second.level > l; });
  queued_lits_.clear();
  for (const Queued& q : queue_) queued_lits_.insert(q.imp.literal.ToInt());
  pending_.reset();
  streaming_ = false;
  reason_active_ = false;
  dirty_ = true;
}

bool CdclCore::cb_check_found_model(const std::vector<int>&) {
  if (pending_) return false;
  const FeasibilityResult fr = ts_->check_feasible();
  if (!fr.feasible) {
    SetConflict(fr.certificate);
    return false;
  }
  witness_ = fr.witness;
  return true;
}

int CdclCore::cb_decide() {
  if (pending_) return 0;
  int best = 0;
  for (int v = 1; v < static_cast<int>(value_.size()); ++v)
    if (value_[v] == 0 && (best == 0 || score_[v] > score_[best])) best = v;
  return best;
}

int CdclCore::cb_propagate() {
  if (pending_) return 0;
  while (!queue_.empty()) {
    Queued q = queue_.front();
    queue_.erase(queue_.begin());
    const int lit = q.imp.literal.ToInt();
    queued_lits_.erase(lit);
    if (value_[std::abs(lit)] != 0) continue;
    q.level = level_;
    propagated_[lit] = q;
    ++stats_.theory_propagations;
    return lit;
  }
  if (!dirty_) return 0;
  dirty_ = false;
  const PropagationResult pr = ts_->propagate_relu_lemmas();
  if (pr.certificate >= 0) {
    SetConflict(pr.certificate);
    return 0;
  }
  if (options_.pdcl) {
    for (const PhaseImplication& imp : pr.implications) {
      const int lit = imp.literal.ToInt();
      if (value_[std::abs(lit)] != 0 || queued_lits_.count(lit)) continue;
      queue_.push_back(Queued{level_, imp});
      queued_lits_.insert(lit);
    }
  }
  const FeasibilityResult fr = ts_->check_feasible();
  if (!fr.feasible) {
    SetConflict(fr.certificate);
    return 0;
  }
  return queue_.empty() ? 0 : cb_propagate();
}

int CdclCore::cb_add_reason_clause_lit(int propagated_lit) {
  if (!reason_active_ || reason_lit_ != propagated_lit) {
    auto it = propagated_.find(propagated_lit);
    if (it == propagated_.end())
      throw SatContractError("no theory reason for literal " + std::to_string(propagated_lit));
    std::set<int> lits;
    CollectSupport(it->second.imp.cause.support, &lits);
    lits.insert(propagated_lit);
    reason_buf_.assign(lits.begin(), lits.end());
    reason_lit_ = propagated_lit;
    reason_pos_ = 0;
    reason_active_ = true;
  }
  if (reason_pos_ < reason_buf_.size()) return reason_buf_[reason_pos_++];
  reason_active_ = false;
  last_reason_ = std::make_pair(propagated_lit, reason_buf_);
  return 0;
}

bool CdclCore::cb_has_external_clause() { return pending_.has_value(); }

int CdclCore::cb_add_external_clause_lit() {
  if (!streaming_) {
    if (!pending_) return 0;
    streamed_ = pending_;
    stream_pos_ = 0;
    streaming_ = true;
  }
  if (stream_pos_ < streamed_->clause.size()) return streamed_->clause[stream_pos_++];
  streaming_ = false;
  pending_.reset();
  return 0;
}

void CdclCore::add_original_clause(ClauseId id, const std::vector<int>& clause,
                                   ClauseOrigin origin) {
  switch (origin) {
    case ClauseOrigin::kInput:
    case ClauseOrigin::kSatDerived:
      if (writer_) throw std::logic_error("input clauses cannot be justified in the proof");
      return;
    case ClauseOrigin::kTheoryConflict: {
      if (!streamed_) throw std::logic_error("theory clause without a streamed conflict");
      const bool hole = streamed_->certificate < 0;
      if (options_.record_clauses) theory_clauses_.push_back({clause, origin, hole});
      if (hole) ++stats_.holes;
      if (writer_) {
        if (hole) {
          writer_->EmitHole(id, clause);
        } else {
          writer_->EmitLeaf(id, clause, ts_->certificates()[streamed_->certificate],
                            streamed_->weakening);
        }
      }
      return;
    }
    case ClauseOrigin::kTheoryReason: {
      if (!last_reason_) throw std::logic_error("reason clause without a streamed reason");
      if (options_.record_clauses) theory_clauses_.push_back({clause, origin, false});
      if (writer_) {
        auto it = propagated_.find(last_reason_->first);
        if (it == propagated_.end()) throw std::logic_error("reason for an unknown propagation");
        writer_->EmitPhaseReason(id, clause, it->second.imp);
      }
      return;
    }
  }
}

void CdclCore::add_derived_clause(ClauseId id, const std::vector<int>& clause,
                                  const std::vector<ClauseId>& chain) {
  if (writer_) writer_->EmitDerived(id, clause, chain);
  Bump(clause);
}

std::vector<int> CdclCore::ConflictClause(const Certificate& cert) {
  std::set<int> lits;
  CollectSupport(cert.support, &lits);
  return std::vector<int>(lits.begin(), lits.end());
}

void CdclCore::CollectSupport(const std::vector<Bound>& support, std::set<int>* out) {
  for (const Bound& b : support) {
    switch (b.source.kind) {
      case BoundSource::Kind::kInput:
        break;
      case BoundSource::Kind::kDecision:
        out->insert(-b.source.literal.ToInt());
        break;
      case BoundSource::Kind::kLemma: {
        const int id = b.source.lemma_id;
        auto it = lemma_support_.find(id);
        if (it == lemma_support_.end()) {
          ts_->mark_in_proof(id);
          std::set<int> sub;
          CollectSupport(ts_->lemma(id).cause.support, &sub);
          it = lemma_support_.emplace(id, std::vector<int>(sub.begin(), sub.end())).first;
        }
        out->insert(it->second.begin(), it->second.end());
        break;
      }
    }
  }
}

std::vector<int> CdclCore::NaiveClause() const {
  std::vector<int> out;
  for (const auto& [lit, lvl] : assigned_) out.push_back(-lit);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void CdclCore::SetConflict(int certificate) {
  if (pending_) return;
  const Certificate& cert = ts_->certificates()[certificate];
  Pending p;
  if (cert.hole) {
    p.clause = NaiveClause();
  } else {
    p.certificate = certificate;
    p.clause = ConflictClause(cert);
    if (!options_.pdcl) {
      for (const auto& [lit, lvl] : assigned_) {
        if (std::binary_search(p.clause.begin(), p.clause.end(), -lit)) continue;
        const std::optional<WeakeningAtom> atom =
            PickWeakeningAtom(ts_->query(), cert, Literal::FromInt(lit));
        if (!atom) continue;
        p.weakening.push_back(*atom);
        p.clause.insert(std::lower_bound(p.clause.begin(), p.clause.end(), -lit), -lit);
      }
    }
  }
  ++stats_.theory_conflicts;
  pending_ = std::move(p);
}

void CdclCore::Bump(const std::vector<int>& clause) {
  for (int lit : clause) score_[std::abs(lit)] += bump_;
  bump_ /= 0.95;
  if (bump_ > 1e100) {
    for (double& s : score_) s *= 1e-100;
    bump_ *= 1e-100;
  }
}

}  // namespace reluproof
