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

// Acceptance run: one PASS/FAIL/SKIP line per criterion, exit status 1 when
// any criterion fails.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.h"
#include "reluproof/cdclcore.h"
#include "reluproof/checker.h"
#include "reluproof/pipeline.h"
#include "reluproof/preprocess.h"
#include "reluproof/proofwriter.h"

namespace reluproof {
namespace {

namespace fs = std::filesystem;

const std::string kData = RELUPROOF_DATA_DIR;

enum class Status { kPass, kFail, kSkip };

struct Outcome {
  Status status = Status::kFail;
  std::string detail;
};

std::string Slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Query {
  Network net;
  PropertySpec prop;
};

// One solved query of the random corpus.
struct Solved {
  Query query;
  bool oracle_sat = false;
  VerifyOutcome outcome;
  std::string proof_path;
};

bool IsUnsat(const Verdict& v) {
  return std::holds_alternative<UnsatVerdict>(v) || std::holds_alternative<UnsatPreprocessingVerdict>(v);
}

oracle::RandomQuerySpec CorpusSpec() {
  oracle::RandomQuerySpec spec;
  spec.max_relus = 12;
  spec.max_num = 16;
  spec.max_den = 16;
  return spec;
}

class Acceptance {
 public:
  explicit Acceptance(fs::path dir) : dir_(std::move(dir)) {}

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  // 500 random queries against the exhaustive oracle.
  Outcome Criterion1() {
    std::mt19937_64 rng(20260101);
    const oracle::RandomQuerySpec spec = CorpusSpec();
    const auto start = std::chrono::steady_clock::now();
    int agree = 0, sat = 0, unsat = 0, preprocessing = 0, bad_witness = 0;
    std::string first_mismatch;
    for (int i = 0; i < kQueries; ++i) {
      Solved s;
      s.query.net = oracle::RandomNetwork(rng, spec);
      s.query.prop = oracle::RandomProperty(rng, s.query.net, spec);
      s.proof_path = Path("q" + std::to_string(i) + ".alethe");
      VerifyOptions opts;
      opts.proof_path = s.proof_path;
      s.outcome = Verify(s.query.net, s.query.prop, opts);
      s.oracle_sat = oracle::NetworkQuerySat(s.query.net, s.query.prop);
      const bool got_sat = std::holds_alternative<SatVerdict>(s.outcome.verdict);
      bool ok = got_sat == s.oracle_sat && (got_sat || IsUnsat(s.outcome.verdict));
      if (got_sat) {
        ++sat;
        const RationalVector& x = std::get<SatVerdict>(s.outcome.verdict).assignment;
        bool in_box = true;
        for (int k = 0; k < x.size(); ++k)
          in_box = in_box && s.query.prop.input_lower[k] <= x(k) && x(k) <= s.query.prop.input_upper[k];
        if (!in_box || !OutputsSatisfy(s.query.prop, EvalNetwork(s.query.net, x))) {
          ok = false;
          ++bad_witness;
        }
      } else if (std::holds_alternative<UnsatPreprocessingVerdict>(s.outcome.verdict)) {
        ++preprocessing;
      } else {
        ++unsat;
      }
      if (ok) {
        ++agree;
      } else if (first_mismatch.empty()) {
        first_mismatch = " first mismatch at query " + std::to_string(i);
      }
      corpus_.push_back(std::move(s));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Outcome o;
    o.status = agree == kQueries && secs < 600 ? Status::kPass : Status::kFail;
    std::ostringstream d;
    d << agree << "/" << kQueries << " verdicts match the oracle (sat " << sat << ", unsat " << unsat
      << ", preprocessing " << preprocessing << ", bad witnesses " << bad_witness << ") in " << secs << "s"
      << first_mismatch;
    o.detail = d.str();
    return o;
  }

  // Every fault-free UNSAT proof checks valid and ends with the empty clause.
  Outcome Criterion2() {
    int proofs = 0, valid = 0;
    std::string first_bad;
    auto check = [&](const std::string& proof_path, const std::string& label) {
      ++proofs;
      const CheckReport r = CheckProofFiles(proof_path + ".problem.smt2", proof_path);
      const std::vector<ParsedCommand> cmds = ParseProof(Slurp(proof_path));
      const bool ok = r.verdict == CheckVerdict::kValid && !cmds.empty() && cmds.back().rule != "assume" &&
                      cmds.back().clause_size == 0;
      if (ok) {
        ++valid;
      } else if (first_bad.empty()) {
        first_bad = " first failure: " + label + " (" + r.reason + ")";
      }
    };
    for (size_t i = 0; i < corpus_.size(); ++i)
      if (std::holds_alternative<UnsatVerdict>(corpus_[i].outcome.verdict))
        check(corpus_[i].proof_path, "query " + std::to_string(i));
    for (const auto& [net, prop] : std::vector<std::pair<std::string, std::string>>{
             {"two_relu.json", "two_relu_unsat.vnnlib"}, {"identity.json", "identity_unsat.vnnlib"}}) {
      VerifyOptions opts;
      opts.proof_path = Path("fixture_" + prop + ".alethe");
      const VerifyOutcome out = Verify(ParseNetwork(kData + "/" + net), ParseProperty(kData + "/" + prop), opts);
      if (std::holds_alternative<UnsatVerdict>(out.verdict)) {
        check(*opts.proof_path, prop);
      } else {
        ++proofs;
        if (first_bad.empty()) first_bad = " fixture " + prop + " not unsat";
      }
    }
    Outcome o;
    o.status = proofs > 0 && valid == proofs ? Status::kPass : Status::kFail;
    o.detail = std::to_string(valid) + "/" + std::to_string(proofs) + " proofs valid with a final empty clause" +
               first_bad;
    return o;
  }

  // Negating any theory or learned clause makes the query infeasible.
  Outcome Criterion3() {
    int64_t clauses = 0, sound = 0;
    std::string first_bad;
    for (size_t i = 0; i < corpus_.size(); ++i) {
      const Solved& s = corpus_[i];
      const AbstractionMap& abs = s.outcome.compiled.abstraction;
      std::vector<std::vector<int>> all;
      for (const TheoryClause& tc : s.outcome.theory_clauses) all.push_back(tc.clause);
      for (const std::vector<int>& c : s.outcome.derived_clauses) all.push_back(c);
      for (const std::vector<int>& clause : all) {
        ++clauses;
        oracle::Pattern fixed(s.query.net.num_relus(), 0);
        bool contradictory = false;
        for (int lit : clause) {
          const int relu = abs.relu_of_var[std::abs(lit)];
          const int phase = lit > 0 ? -1 : 1;
          if (fixed[relu] == -phase) contradictory = true;
          fixed[relu] = phase;
        }
        if (contradictory || !oracle::NetworkQuerySat(s.query.net, s.query.prop, fixed)) {
          ++sound;
        } else if (first_bad.empty()) {
          first_bad = " first unsound clause in query " + std::to_string(i);
        }
      }
    }
    Outcome o;
    o.status = clauses > 0 && sound == clauses ? Status::kPass : Status::kFail;
    o.detail = std::to_string(sound) + "/" + std::to_string(clauses) + " clauses sound" + first_bad;
    return o;
  }

  // Proof-based conflict clauses need no more leaves than naive ones.
  Outcome Criterion4() {
    std::mt19937_64 rng(4444);
    oracle::RandomQuerySpec spec = CorpusSpec();
    int fixtures = 0, fewer_or_equal = 0, same_verdict = 0, attempts = 0;
    while (fixtures < kLeafFixtures && attempts < 5000) {
      ++attempts;
      const Network net = oracle::RandomNetwork(rng, spec);
      if (net.num_relus() < 6) continue;
      const PropertySpec prop = oracle::RandomProperty(rng, net, spec);
      const VerifyOutcome with = Verify(net, prop, VerifyOptions{});
      if (!std::holds_alternative<UnsatVerdict>(with.verdict)) continue;
      VerifyOptions naive;
      naive.pdcl = false;
      const VerifyOutcome without = Verify(net, prop, naive);
      ++fixtures;
      if (with.verdict.index() == without.verdict.index()) ++same_verdict;
      if (with.stats.leaf_certificates <= without.stats.leaf_certificates) ++fewer_or_equal;
    }
    Outcome o;
    const bool enough = fixtures >= kLeafFixtures;
    o.status = enough && same_verdict == fixtures && fewer_or_equal * 10 >= fixtures * 7 ? Status::kPass
                                                                                         : Status::kFail;
    o.detail = std::to_string(fewer_or_equal) + "/" + std::to_string(fixtures) +
               " UNSAT fixtures with >= 6 ReLUs need no more leaves with proof-based clauses; verdicts identical on " +
               std::to_string(same_verdict) + "/" + std::to_string(fixtures);
    return o;
  }

  // Split-and-conquer agrees with the sequential run and its proofs check.
  Outcome Criterion5() {
    std::mt19937_64 rng(5555);
    oracle::RandomQuerySpec spec = CorpusSpec();
    int runs = 0, agree = 0, proofs = 0, valid = 0, seeds = 0;
    std::string first_bad;
    while (seeds < kSeeds) {
      const Network net = oracle::RandomNetwork(rng, spec);
      if (net.num_relus() < 4) continue;
      const PropertySpec prop = oracle::RandomProperty(rng, net, spec);
      const VerifyOutcome seq = Verify(net, prop, VerifyOptions{});
      if (std::holds_alternative<UnsatPreprocessingVerdict>(seq.verdict)) continue;
      ++seeds;
      for (int k : {1, 2, 3}) {
        for (int n : {2, 4}) {
          VerifyOptions opts;
          opts.workers = n;
          opts.split_depth = k;
          opts.seed = static_cast<uint64_t>(seeds);
          opts.proof_path = Path("snc.alethe");
          const VerifyOutcome par = Verify(net, prop, opts);
          ++runs;
          const std::string label = " seed " + std::to_string(seeds) + " k=" + std::to_string(k) +
                                    " N=" + std::to_string(n);
          if (par.verdict.index() == seq.verdict.index()) {
            ++agree;
          } else if (first_bad.empty()) {
            first_bad = " verdict mismatch at" + label;
          }
          if (std::holds_alternative<UnsatVerdict>(par.verdict)) {
            ++proofs;
            const CheckReport r = CheckProofFiles(*opts.proof_path + ".problem.smt2", *opts.proof_path);
            if (r.verdict == CheckVerdict::kValid) {
              ++valid;
            } else if (first_bad.empty()) {
              first_bad = " invalid proof at" + label + ": " + r.reason;
            }
          }
        }
      }
    }
    Outcome o;
    o.status = agree == runs && valid == proofs && proofs > 0 ? Status::kPass : Status::kFail;
    o.detail = std::to_string(agree) + "/" + std::to_string(runs) + " runs over " + std::to_string(seeds) +
               " seeds agree with the sequential verdict; " + std::to_string(valid) + "/" +
               std::to_string(proofs) + " merged proofs valid" + first_bad;
    return o;
  }

  // One injected fault gives exactly one hole; one mutated step per rule is
  // rejected at that step.
  Outcome Criterion6() {
    int faulted = 0, one_hole = 0;
    std::vector<std::string> unsat_proofs;
    for (const Solved& s : corpus_)
      if (std::holds_alternative<UnsatVerdict>(s.outcome.verdict)) unsat_proofs.push_back(s.proof_path);
    for (size_t i = 0; i < corpus_.size() && faulted < kFaultRuns; ++i) {
      const Solved& s = corpus_[i];
      if (!std::holds_alternative<UnsatVerdict>(s.outcome.verdict)) continue;
      VerifyOptions opts;
      opts.proof_path = Path("fault.alethe");
      opts.fault_certificates = {1};
      const VerifyOutcome out = Verify(s.query.net, s.query.prop, opts);
      ++faulted;
      if (!std::holds_alternative<UnsatVerdict>(out.verdict)) continue;
      const CheckReport r = CheckProofFiles(*opts.proof_path + ".problem.smt2", *opts.proof_path);
      if (r.verdict == CheckVerdict::kHoley && r.holes.size() == 1) ++one_hole;
    }

    const std::vector<std::string> rules = {"assume", "la_generic", "resolution", "la_tautology",
                                            "or",     "and_pos",    "xor1"};
    std::map<std::string, std::string> result;  // rule -> "ok" or failure note
    for (const std::string& rule : rules) {
      result[rule] = "no step found";
      for (const std::string& path : unsat_proofs) {
        const std::string proof = Slurp(path);
        const std::optional<std::pair<std::string, std::string>> mutated = Mutate(proof, rule);
        if (!mutated) continue;
        const CheckReport r = CheckProofText(Slurp(path + ".problem.smt2"), mutated->second);
        result[rule] = r.verdict == CheckVerdict::kInvalid && r.failing_step == mutated->first
                           ? "ok"
                           : "not rejected at " + mutated->first;
        break;
      }
    }
    int rules_ok = 0;
    std::string notes;
    for (const std::string& rule : rules) {
      if (result[rule] == "ok") {
        ++rules_ok;
      } else {
        notes += " " + rule + ": " + result[rule] + ";";
      }
    }
    Outcome o;
    o.status = faulted > 0 && one_hole == faulted && rules_ok == static_cast<int>(rules.size()) ? Status::kPass
                                                                                                 : Status::kFail;
    o.detail = std::to_string(one_hole) + "/" + std::to_string(faulted) + " faulted runs holey with one hole; " +
               std::to_string(rules_ok) + "/" + std::to_string(rules.size()) +
               " rules reject a mutated step at that step" + notes;
    return o;
  }

  // ReduceFarkas followed by the triple combination reproduces the
  // contradiction value.
  Outcome Criterion7() {
    std::mt19937_64 rng(7777);
    int systems = 0, equal = 0, lp_infeasible = 0;
    while (systems < kFarkasSystems) {
      const int m = 1 + static_cast<int>(rng() % 3);
      const int n = 2 + static_cast<int>(rng() % 4);
      RationalMatrix a(m, n);
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) a(j, i) = rng() % 3 == 0 ? Rational(0) : oracle::RandomRational(rng, 4, 3);
      BoundVector l(n), u(n);
      for (int i = 0; i < n; ++i) {
        const Rational x = oracle::RandomRational(rng, 8, 2);
        l[i] = x;
        u[i] = x + Rational(static_cast<long>(rng() % 5), 2);
      }
      FarkasVector w = FarkasVector::Zero(m);
      for (int j = 0; j < m; ++j) w.w(j) = oracle::RandomRational(rng, 3, 2);
      const std::optional<Rational> k = ContradictionValue(w, a, l, u);
      if (!k || *k >= 0) continue;
      ++systems;
      const ReductionTriple t = ReduceFarkas(w, a, l, u);
      const std::optional<Rational> v = TripleCombination(t, a, l, u);
      bool nonneg = true;
      for (int i = 0; i < n; ++i) nonneg = nonneg && t.w2(i) >= 0 && t.w3(i) >= 0;
      if (v && *v == *k && nonneg) ++equal;

      oracle::LpProblem lp;
      lp.num_vars = n;
      lp.lower = l;
      lp.upper = u;
      for (int j = 0; j < m; ++j) {
        oracle::LinearConstraint c;
        for (int i = 0; i < n; ++i) c.coeffs.push_back(a(j, i));
        c.sense = oracle::Sense::kEq;
        lp.constraints.push_back(c);
      }
      if (!oracle::SolveLp(lp)) ++lp_infeasible;
    }
    Outcome o;
    o.status = equal == systems && lp_infeasible == systems ? Status::kPass : Status::kFail;
    o.detail = std::to_string(equal) + "/" + std::to_string(systems) +
               " infeasible bound systems reduce to the contradiction value (LP oracle agrees infeasible on " +
               std::to_string(lp_infeasible) + ")";
    return o;
  }

  Outcome Criterion8();

  // Carcara, when installed.
  Outcome Criterion9() {
    Outcome o;
    if (std::system("command -v carcara > /dev/null 2>&1") != 0) {
      o.status = Status::kSkip;
      o.detail = "carcara not found on PATH";
      return o;
    }
    int proofs = 0, accepted = 0;
    for (const Solved& s : corpus_) {
      if (!std::holds_alternative<UnsatVerdict>(s.outcome.verdict)) continue;
      if (++proofs > 20) break;
      const std::string cmd = "carcara check " + s.proof_path + " " + s.proof_path + ".problem.smt2 2>&1";
      FILE* p = popen(cmd.c_str(), "r");
      std::string out;
      char buf[512];
      while (p && fgets(buf, sizeof buf, p)) out += buf;
      const int status = p ? pclose(p) : -1;
      if (status == 0 && out.find("valid") != std::string::npos && out.find("invalid") == std::string::npos)
        ++accepted;
    }
    proofs = std::min(proofs, 20);
    o.status = proofs > 0 && accepted == proofs ? Status::kPass : Status::kFail;
    o.detail = std::to_string(accepted) + "/" + std::to_string(proofs) + " proofs accepted by carcara";
    return o;
  }

 private:
  static constexpr int kQueries = 500;
  static constexpr int kLeafFixtures = 30;
  static constexpr int kSeeds = 20;
  static constexpr int kFaultRuns = 20;
  static constexpr int kFarkasSystems = 1000;

  // Changes one argument of the first step of `rule`: returns the step id
  // and the mutated proof.
  static std::optional<std::pair<std::string, std::string>> Mutate(const std::string& proof,
                                                                   const std::string& rule) {
    std::istringstream in(proof);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    for (std::string& line : lines) {
      const bool is_assume = line.rfind("(assume ", 0) == 0;
      if (rule == "assume" ? !is_assume : line.find(":rule " + rule + " ") == std::string::npos &&
                                              line.find(":rule " + rule + ")") == std::string::npos)
        continue;
      const size_t id_start = line.find(' ') + 1;
      const std::string id = line.substr(id_start, line.find(' ', id_start) - id_start);
      std::string mutated = line;
      if (rule == "assume") {
        // (assume id term) -> (assume id (not term))
        if (id.rfind("relu_", 0) == 0) continue;
        const std::string term = line.substr(id_start + id.size() + 1, line.size() - id_start - id.size() - 2);
        mutated = "(assume " + id + " (not " + term + "))";
      } else if (rule == "la_generic") {
        // Replace the first multiplier by a different constant.
        const size_t a = line.find(":args (") + 7;
        size_t b = a;
        int depth = 0;
        do {
          if (line[b] == '(') ++depth;
          if (line[b] == ')') --depth;
          ++b;
        } while (depth > 0 || (line[b] != ' ' && line[b] != ')'));
        const std::string first = line.substr(a, b - a);
        mutated.replace(a, b - a, first == "2" ? "3" : "2");
      } else if (rule == "and_pos") {
        const size_t a = mutated.find(":args (") + 7;
        mutated[a] = mutated[a] == '0' ? '1' : '0';
      } else if (rule == "resolution") {
        const size_t close = mutated.rfind("))");
        const size_t last = mutated.rfind(' ', close);
        if (mutated.substr(mutated.find(":premises (") + 11).find(' ') == std::string::npos) continue;
        mutated.erase(last, close - last);
      } else if (rule == "xor1" || rule == "or") {
        const size_t a = mutated.find(":premises (") + 11;
        const size_t end = mutated.find(')', a);
        mutated.replace(a, end - a, "r0");
      } else if (rule == "la_tautology") {
        const size_t a = mutated.find("(not (<= ");
        if (a == std::string::npos) continue;
        mutated.replace(a, 9, "(not (>= ");
      }
      line = mutated;
      std::string out;
      for (const std::string& l : lines) out += l + "\n";
      return std::make_pair(id, out);
    }
    return std::nullopt;
  }

  fs::path dir_;
  std::vector<Solved> corpus_;
};

// Wraps a CdclCore, checking the callback contract: propagation is drained
// before every decision, and a backtrack to level L restores the bound
// stacks and phases recorded when level L + 1 was opened.
class ContractRecorder : public ExternalPropagator {
 public:
  ContractRecorder(CdclCore* core, const TSolver* ts) : core_(core), ts_(ts) {}

  void notify_assignment(const std::vector<int>& lits) override {
    if (!lits.empty()) drained_ = false;
    core_->notify_assignment(lits);
  }
  void notify_new_decision_level() override {
    snapshots_.push_back({ts_->bounds(), Phases()});
    core_->notify_new_decision_level();
  }
  void notify_backtrack(size_t new_level) override {
    core_->notify_backtrack(new_level);
    ++backtracks_;
    if (new_level >= snapshots_.size()) {
      ++violations_;
      return;
    }
    const auto& [bounds, phases] = snapshots_[new_level];
    if (!ts_->bounds().SameStacks(bounds) || Phases() != phases) ++violations_;
    snapshots_.erase(snapshots_.begin() + static_cast<std::ptrdiff_t>(new_level), snapshots_.end());
    drained_ = false;
  }
  bool cb_check_found_model(const std::vector<int>& model) override {
    return core_->cb_check_found_model(model);
  }
  int cb_decide() override {
    ++decides_;
    if (!drained_) ++violations_;
    return core_->cb_decide();
  }
  int cb_propagate() override {
    const int lit = core_->cb_propagate();
    drained_ = lit == 0;
    return lit;
  }
  int cb_add_reason_clause_lit(int lit) override { return core_->cb_add_reason_clause_lit(lit); }
  bool cb_has_external_clause() override {
    const bool has = core_->cb_has_external_clause();
    if (has) drained_ = false;
    return has;
  }
  int cb_add_external_clause_lit() override { return core_->cb_add_external_clause_lit(); }

  int64_t violations() const { return violations_; }
  int64_t backtracks() const { return backtracks_; }
  int64_t decides() const { return decides_; }

 private:
  std::vector<int> Phases() const {
    std::vector<int> p;
    for (size_t k = 0; k < ts_->query().relus.size(); ++k) p.push_back(ts_->phase(static_cast<int>(k)));
    return p;
  }

  CdclCore* core_;
  const TSolver* ts_;
  std::vector<std::pair<BoundStore, std::vector<int>>> snapshots_;
  bool drained_ = false;
  int64_t violations_ = 0;
  int64_t backtracks_ = 0;
  int64_t decides_ = 0;
};

Outcome Acceptance::Criterion8() {
  std::mt19937_64 rng(8888);
  oracle::RandomQuerySpec spec = CorpusSpec();
  int runs = 0, clean = 0;
  int64_t backtracks = 0, decides = 0;
  while (runs < 100) {
    const Network net = oracle::RandomNetwork(rng, spec);
    const PropertySpec prop = oracle::RandomProperty(rng, net, spec);
    CompiledQuery c = Compile(net, prop);
    c.query = TightenBounds(c.query, net);
    if (DetectTrivialUnsat(c.query)) continue;
    ++runs;
    TSolver ts(c.query);
    CdclCore core(&ts, c.abstraction, nullptr);
    ContractRecorder rec(&core, &ts);
    SatSolver sat(c.abstraction.num_vars());
    sat.connect_propagator(&rec);
    sat.connect_tracer(&core);
    sat.solve();
    if (rec.violations() == 0) ++clean;
    backtracks += rec.backtracks();
    decides += rec.decides();
  }
  Outcome o;
  o.status = clean == runs && backtracks > 0 ? Status::kPass : Status::kFail;
  o.detail = std::to_string(clean) + "/" + std::to_string(runs) + " runs honor the callback contract (" +
             std::to_string(decides) + " decisions, " + std::to_string(backtracks) + " backtracks checked)";
  return o;
}

const char* StatusName(Status s) {
  switch (s) {
    case Status::kPass:
      return "PASS";
    case Status::kFail:
      return "FAIL";
    case Status::kSkip:
      return "SKIP";
  }
  return "FAIL";
}

}  // namespace
}  // namespace reluproof

int main() {
  using namespace reluproof;
  const fs::path dir = fs::temp_directory_path() / ("reluproof_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  Acceptance acc(dir);
  bool failed = false;
  auto report = [&](int n, Outcome o) {
    std::cout << "criterion " << n << ": " << StatusName(o.status) << " - " << o.detail << std::endl;
    failed = failed || o.status == Status::kFail;
  };
  report(1, acc.Criterion1());
  report(2, acc.Criterion2());
  report(3, acc.Criterion3());
  report(4, acc.Criterion4());
  report(5, acc.Criterion5());
  report(6, acc.Criterion6());
  report(7, acc.Criterion7());
  report(8, acc.Criterion8());
  report(9, acc.Criterion9());
  fs::remove_all(dir);
  return failed ? 1 : 0;
}
