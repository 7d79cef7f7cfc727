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

#include "reluproof/checker.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "checker_terms.h"

namespace reluproof {

using checker_internal::ConstantOf;
using checker_internal::LinearForm;
using checker_internal::Negate;
using checker_internal::NegatedLiteralForm;
using checker_internal::ParseSexprs;
using checker_internal::Sexpr;
using checker_internal::Term;
using checker_internal::TermContext;

const char* CheckVerdictName(CheckVerdict v) {
  switch (v) {
    case CheckVerdict::kValid:
      return "valid";
    case CheckVerdict::kHoley:
      return "holey";
    case CheckVerdict::kInvalid:
      return "invalid";
  }
  return "invalid";
}

namespace {

struct Command {
  bool assume = false;
  std::string id;
  std::vector<Term> clause;  // the assumed term for assumes
  std::string rule;
  std::vector<std::string> premises;
  std::vector<Term> args;
  int line = 0;
};

const Sexpr& Atom(const Sexpr& s, const char* what) {
  if (!s.atom) throw ProofSyntaxError(std::string("expected ") + what, s.line);
  return s;
}

Command ParseCommand(const Sexpr& s, TermContext* ctx) {
  if (s.kids.empty() || !s.kids[0].atom) throw ProofSyntaxError("malformed command", s.line);
  Command c;
  c.line = s.line;
  const std::string& head = s.kids[0].text;
  if (head == "assume") {
    if (s.kids.size() != 3) throw ProofSyntaxError("assume takes an id and a term", s.line);
    c.assume = true;
    c.id = Atom(s.kids[1], "step id").text;
    c.rule = "assume";
    c.clause.push_back(ctx->Normalize(s.kids[2]));
    return c;
  }
  if (head != "step") throw ProofSyntaxError("unknown command '" + head + "'", s.line);
  if (s.kids.size() < 5) throw ProofSyntaxError("step is too short", s.line);
  c.id = Atom(s.kids[1], "step id").text;
  const Sexpr& cl = s.kids[2];
  if (cl.atom || cl.kids.empty() || !cl.kids[0].atom || cl.kids[0].text != "cl")
    throw ProofSyntaxError("step clause must be (cl ...)", s.line);
  for (size_t i = 1; i < cl.kids.size(); ++i) c.clause.push_back(ctx->Normalize(cl.kids[i]));
  size_t i = 3;
  while (i < s.kids.size()) {
    const std::string& key = Atom(s.kids[i], "keyword").text;
    if (i + 1 >= s.kids.size()) throw ProofSyntaxError("keyword " + key + " without value", s.line);
    const Sexpr& value = s.kids[i + 1];
    if (key == ":rule") {
      c.rule = Atom(value, "rule name").text;
    } else if (key == ":premises") {
      if (value.atom) throw ProofSyntaxError("premises must be a list", s.line);
      for (const Sexpr& p : value.kids) c.premises.push_back(Atom(p, "premise id").text);
    } else if (key == ":args") {
      if (value.atom) throw ProofSyntaxError("args must be a list", s.line);
      for (const Sexpr& a : value.kids) c.args.push_back(ctx->Normalize(a));
    } else {
      throw ProofSyntaxError("unknown keyword " + key, s.line);
    }
    i += 2;
  }
  if (c.rule.empty()) throw ProofSyntaxError("step without :rule", s.line);
  return c;
}

std::set<std::string> KeySet(const std::vector<Term>& clause) {
  std::set<std::string> out;
  for (const Term& t : clause) out.insert(t.Key());
  return out;
}

class Checker {
 public:
  explicit Checker(std::set<std::string> asserts) : asserts_(std::move(asserts)) {}

  // Empty string when the command is correct, otherwise the reason.
  std::string Check(const Command& c) {
    if (clauses_.count(c.id)) return "duplicate step id";
    std::string err = c.assume ? CheckAssume(c) : CheckStep(c);
    if (err.empty()) clauses_[c.id] = c.clause;
    return err;
  }

  const std::vector<std::string>& holes() const { return holes_; }

 private:
  std::string CheckAssume(const Command& c) {
    if (!asserts_.count(c.clause[0].Key())) return "assumption is not an assertion of the problem";
    return "";
  }

  std::string CheckStep(const Command& c) {
    std::vector<const std::vector<Term>*> prem;
    for (const std::string& p : c.premises) {
      auto it = clauses_.find(p);
      if (it == clauses_.end()) return "premise " + p + " is not defined earlier";
      prem.push_back(&it->second);
    }
    if (c.rule == "resolution") return Resolution(c, prem);
    if (c.rule == "la_generic") return LaGeneric(c.clause, c.args);
    if (c.rule == "la_tautology") return LaTautology(c);
    if (c.rule == "and_pos") return AndPos(c);
    if (c.rule == "xor1") return Xor1(c, prem);
    if (c.rule == "or") return Or(c, prem);
    if (c.rule == "hole") {
      holes_.push_back(c.id);
      return "";
    }
    return "unsupported rule " + c.rule;
  }

  static std::string Resolution(const Command& c, const std::vector<const std::vector<Term>*>& prem) {
    if (prem.empty()) return "resolution without premises";
    std::vector<Term> cur;
    std::set<std::string> keys;
    auto add = [&](const Term& t) {
      if (keys.insert(t.Key()).second) cur.push_back(t);
    };
    for (const Term& t : *prem[0]) add(t);
    for (size_t p = 1; p < prem.size(); ++p) {
      std::vector<const Term*> pivots;
      for (const Term& t : *prem[p])
        if (keys.count(Negate(t).Key())) pivots.push_back(&t);
      if (pivots.size() != 1)
        return "premise " + c.premises[p] + " has " + std::to_string(pivots.size()) +
               " complementary literals";
      const std::string gone = Negate(*pivots[0]).Key();
      const std::string pivot = pivots[0]->Key();
      keys.erase(gone);
      cur.erase(std::find_if(cur.begin(), cur.end(), [&](const Term& t) { return t.Key() == gone; }));
      for (const Term& t : *prem[p])
        if (t.Key() != pivot) add(t);
    }
    if (keys != KeySet(c.clause)) return "resolvent differs from the conclusion";
    return "";
  }

  static std::string LaGeneric(const std::vector<Term>& clause, const std::vector<Term>& args) {
    if (clause.empty()) return "la_generic with an empty clause";
    if (args.size() != clause.size()) return "la_generic needs one coefficient per literal";
    LinearForm sum;
    bool strict = false;
    bool inequality = false;
    for (size_t i = 0; i < clause.size(); ++i) {
      const std::optional<Rational> a = ConstantOf(args[i]);
      if (!a) return "la_generic coefficient is not a constant";
      const std::optional<LinearForm> f = NegatedLiteralForm(clause[i]);
      if (!f) return "literal " + clause[i].Key() + " is not a linear atom";
      if (f->op != LinearForm::Op::kEq) {
        if (a->sign() < 0) return "negative coefficient on an inequality";
        if (a->sign() > 0) (f->op == LinearForm::Op::kGt ? strict : inequality) = true;
      }
      for (const auto& [v, k] : f->coeffs) sum.coeffs[v] += *a * k;
      sum.constant += *a * f->constant;
    }
    for (const auto& [v, k] : sum.coeffs)
      if (!k.is_zero()) return "variable " + v + " does not cancel";
    const Rational& k = sum.constant;
    const bool contradiction = strict ? k.sign() <= 0 : (inequality ? k.sign() < 0 : !k.is_zero());
    return contradiction ? "" : "combination is not a contradiction";
  }

  static std::string LaTautology(const Command& c) {
    if (c.clause.size() != 1) return "la_tautology expects one literal";
    const Term& t = c.clause[0];
    if (t.kind != Term::Kind::kApp || t.head != "or" || t.args.size() != 2)
      return "la_tautology expects a binary disjunction";
    const std::optional<LinearForm> f1 = NegatedLiteralForm(t.args[0]);
    const std::optional<LinearForm> f2 = NegatedLiteralForm(t.args[1]);
    if (!f1 || !f2 || f1->coeffs.empty()) return "la_tautology literal is not linear";
    // The multiplier of the second literal that cancels the variables.
    const auto& [v, k1] = *f1->coeffs.begin();
    auto it = f2->coeffs.find(v);
    if (it == f2->coeffs.end() || it->second.is_zero()) return "la_tautology literals do not cancel";
    const Rational lambda = -k1 / it->second;
    if (lambda.sign() <= 0) return "la_tautology literals do not cancel";
    return LaGeneric(t.args, {Const(1), Const(lambda)});
  }

  static Term Const(const Rational& v) {
    Term t;
    t.kind = Term::Kind::kConst;
    t.value = v;
    return t;
  }

  static std::string AndPos(const Command& c) {
    if (c.clause.size() != 2 || c.args.size() != 1 || !c.premises.empty())
      return "and_pos expects two literals and one index";
    const std::optional<Rational> idx = ConstantOf(c.args[0]);
    if (!idx || !idx->is_integer() || idx->sign() < 0) return "and_pos index is not a natural";
    const Term& neg = c.clause[0];
    if (!neg.IsNot() || neg.args[0].head != "and") return "and_pos first literal is not (not (and ...))";
    const auto& conj = neg.args[0].args;
    const double i = idx->ToDouble();
    if (i >= static_cast<double>(conj.size())) return "and_pos index out of range";
    if (conj[static_cast<size_t>(i)].Key() != c.clause[1].Key()) return "and_pos conjunct mismatch";
    return "";
  }

  static std::string Xor1(const Command& c, const std::vector<const std::vector<Term>*>& prem) {
    if (prem.size() != 1 || prem[0]->size() != 1) return "xor1 expects one unit premise";
    const Term& x = (*prem[0])[0];
    if (x.kind != Term::Kind::kApp || x.head != "xor" || x.args.size() != 2)
      return "xor1 premise is not a binary xor";
    if (KeySet(c.clause) != KeySet(x.args) || c.clause.size() != 2) return "xor1 conclusion mismatch";
    return "";
  }

  static std::string Or(const Command& c, const std::vector<const std::vector<Term>*>& prem) {
    if (prem.size() != 1 || prem[0]->size() != 1) return "or expects one unit premise";
    const Term& x = (*prem[0])[0];
    if (x.kind != Term::Kind::kApp || x.head != "or") return "or premise is not a disjunction";
    if (c.clause.size() != x.args.size()) return "or conclusion mismatch";
    for (size_t i = 0; i < x.args.size(); ++i)
      if (c.clause[i].Key() != x.args[i].Key()) return "or conclusion mismatch";
    return "";
  }

  std::set<std::string> asserts_;
  std::unordered_map<std::string, std::vector<Term>> clauses_;
  std::vector<std::string> holes_;
};

}  // namespace

std::vector<ParsedCommand> ParseProof(std::string_view proof) {
  TermContext ctx;
  std::vector<ParsedCommand> out;
  std::set<std::string> seen;
  for (const Sexpr& s : ParseSexprs(proof)) {
    const Command c = ParseCommand(s, &ctx);
    for (const std::string& p : c.premises)
      if (!seen.count(p)) throw ProofSyntaxError("premise " + p + " does not name an earlier step", c.line);
    if (!seen.insert(c.id).second) throw ProofSyntaxError("duplicate step id " + c.id, c.line);
    out.push_back({c.id, c.rule, c.premises, static_cast<int>(c.clause.size()), c.line});
  }
  if (out.empty()) throw ProofSyntaxError("empty proof", 1);
  return out;
}

CheckReport CheckProofText(std::string_view problem, std::string_view proof) {
  const auto start = std::chrono::steady_clock::now();
  CheckReport report;
  std::set<std::string> asserts;
  {
    TermContext ctx;
    for (const Sexpr& s : ParseSexprs(problem)) {
      if (s.kids.empty() || !s.kids[0].atom) throw ProofSyntaxError("malformed problem command", s.line);
      if (s.kids[0].text == "assert") {
        if (s.kids.size() != 2) throw ProofSyntaxError("assert takes one term", s.line);
        asserts.insert(ctx.Normalize(s.kids[1]).Key());
      }
    }
  }
  TermContext ctx;
  std::vector<Command> commands;
  for (const Sexpr& s : ParseSexprs(proof)) commands.push_back(ParseCommand(s, &ctx));
  if (commands.empty()) throw ProofSyntaxError("empty proof", 1);

  Checker checker(std::move(asserts));
  auto finish = [&]() {
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  };
  for (const Command& c : commands) {
    ++report.steps;
    const std::string err = checker.Check(c);
    if (!err.empty()) {
      report.verdict = CheckVerdict::kInvalid;
      report.failing_step = c.id;
      report.reason = err;
      return finish();
    }
  }
  report.holes = checker.holes();
  if (commands.empty() || commands.back().assume || !commands.back().clause.empty()) {
    report.verdict = CheckVerdict::kInvalid;
    report.reason = "the proof does not end with the empty clause";
    if (!commands.empty()) report.failing_step = commands.back().id;
    return finish();
  }
  report.verdict = report.holes.empty() ? CheckVerdict::kValid : CheckVerdict::kHoley;
  return finish();
}

CheckReport CheckProofFiles(const std::string& problem_path, const std::string& proof_path) {
  auto slurp = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string problem = slurp(problem_path);
  const std::string proof = slurp(proof_path);
  return CheckProofText(problem, proof);
}

}  // namespace reluproof
