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

#include "checker_terms.h"

#include <cctype>
#include <stdexcept>

#include "reluproof/checker.h"

namespace reluproof::checker_internal {

std::vector<Sexpr> ParseSexprs(std::string_view text) {
  std::vector<Sexpr> top;
  std::vector<Sexpr> stack;
  int line = 1;
  size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == ';') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '(') {
      Sexpr s;
      s.line = line;
      stack.push_back(std::move(s));
      ++i;
    } else if (c == ')') {
      if (stack.empty()) throw ProofSyntaxError("unexpected ')'", line);
      Sexpr done = std::move(stack.back());
      stack.pop_back();
      (stack.empty() ? top : stack.back().kids).push_back(std::move(done));
      ++i;
    } else {
      size_t j = i;
      if (c == '|') {
        j = text.find('|', i + 1);
        if (j == std::string_view::npos) throw ProofSyntaxError("unterminated quoted symbol", line);
        ++j;
      } else {
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
               text[j] != '(' && text[j] != ')' && text[j] != ';')
          ++j;
      }
      Sexpr a;
      a.atom = true;
      a.text = std::string(text.substr(i, j - i));
      a.line = line;
      if (stack.empty()) throw ProofSyntaxError("atom '" + a.text + "' outside a command", line);
      stack.back().kids.push_back(std::move(a));
      i = j;
    }
  }
  if (!stack.empty()) throw ProofSyntaxError("unbalanced '('", stack.back().line);
  return top;
}

std::string Term::Key() const {
  switch (kind) {
    case Kind::kConst:
      return "#" + value.ToString();
    case Kind::kSymbol:
      return head;
    case Kind::kApp: {
      std::string s = "(" + head;
      for (const Term& a : args) s += " " + a.Key();
      return s + ")";
    }
  }
  return "";
}

namespace {

bool IsNumeral(const std::string& s) {
  if (s.empty()) return false;
  bool digit = false;
  bool dot = false;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      return false;
    }
  }
  return digit;
}

Term Const(const Rational& v) {
  Term t;
  t.kind = Term::Kind::kConst;
  t.value = v;
  return t;
}

}  // namespace

Term TermContext::Normalize(const Sexpr& s) {
  if (s.atom) {
    if (IsNumeral(s.text)) return Const(Rational::Parse(s.text));
    auto it = names_.find(s.text);
    if (it != names_.end()) return it->second;
    Term t;
    t.head = s.text;
    return t;
  }
  if (s.kids.empty()) throw ProofSyntaxError("empty term", s.line);
  if (!s.kids[0].atom) throw ProofSyntaxError("term head is not a symbol", s.line);
  const std::string& head = s.kids[0].text;
  if (head == "!") {
    if (s.kids.size() != 4 || !s.kids[2].atom || s.kids[2].text != ":named" || !s.kids[3].atom)
      throw ProofSyntaxError("malformed annotation", s.line);
    Term inner = Normalize(s.kids[1]);
    names_[s.kids[3].text] = inner;
    return inner;
  }
  Term t;
  t.kind = Term::Kind::kApp;
  t.head = head;
  for (size_t i = 1; i < s.kids.size(); ++i) t.args.push_back(Normalize(s.kids[i]));
  if (head == "-" && t.args.size() == 1 && t.args[0].kind == Term::Kind::kConst)
    return Const(-t.args[0].value);
  if (head == "/" && t.args.size() == 2 && t.args[0].kind == Term::Kind::kConst &&
      t.args[1].kind == Term::Kind::kConst && !t.args[1].value.is_zero())
    return Const(t.args[0].value / t.args[1].value);
  return t;
}

Term Negate(const Term& t) {
  if (t.IsNot()) return t.args[0];
  Term n;
  n.kind = Term::Kind::kApp;
  n.head = "not";
  n.args.push_back(t);
  return n;
}

std::optional<Rational> ConstantOf(const Term& t) {
  if (t.kind == Term::Kind::kConst) return t.value;
  return std::nullopt;
}

namespace {

// Adds scale * t to `out`; false when t is not linear.
bool AddLinear(const Term& t, const Rational& scale, LinearForm* out) {
  switch (t.kind) {
    case Term::Kind::kConst:
      out->constant += scale * t.value;
      return true;
    case Term::Kind::kSymbol:
      out->coeffs[t.head] += scale;
      return true;
    case Term::Kind::kApp:
      break;
  }
  if (t.head == "+") {
    for (const Term& a : t.args)
      if (!AddLinear(a, scale, out)) return false;
    return true;
  }
  if (t.head == "-") {
    if (t.args.empty()) return false;
    if (t.args.size() == 1) return AddLinear(t.args[0], -scale, out);
    if (!AddLinear(t.args[0], scale, out)) return false;
    for (size_t i = 1; i < t.args.size(); ++i)
      if (!AddLinear(t.args[i], -scale, out)) return false;
    return true;
  }
  if (t.head == "*") {
    Rational factor = 1;
    const Term* var = nullptr;
    for (const Term& a : t.args) {
      if (a.kind == Term::Kind::kConst) {
        factor *= a.value;
      } else if (var == nullptr) {
        var = &a;
      } else {
        return false;
      }
    }
    if (var == nullptr) {
      out->constant += scale * factor;
      return true;
    }
    return AddLinear(*var, scale * factor, out);
  }
  return false;
}

// lhs - rhs, or rhs - lhs when `flip`.
std::optional<LinearForm> Difference(const Term& atom, bool flip, LinearForm::Op op) {
  if (atom.args.size() != 2) return std::nullopt;
  LinearForm f;
  f.op = op;
  const Rational s = flip ? Rational(-1) : Rational(1);
  if (!AddLinear(atom.args[0], s, &f) || !AddLinear(atom.args[1], -s, &f)) return std::nullopt;
  for (auto it = f.coeffs.begin(); it != f.coeffs.end();) {
    if (it->second.is_zero()) {
      it = f.coeffs.erase(it);
    } else {
      ++it;
    }
  }
  return f;
}

}  // namespace

std::optional<LinearForm> NegatedLiteralForm(const Term& lit) {
  using Op = LinearForm::Op;
  if (lit.IsNot()) {
    // The negation of (not A) is A itself.
    const Term& a = lit.args[0];
    if (a.kind != Term::Kind::kApp) return std::nullopt;
    if (a.head == ">=") return Difference(a, false, Op::kGe);
    if (a.head == "<=") return Difference(a, true, Op::kGe);
    if (a.head == ">") return Difference(a, false, Op::kGt);
    if (a.head == "<") return Difference(a, true, Op::kGt);
    if (a.head == "=") return Difference(a, false, Op::kEq);
    return std::nullopt;
  }
  if (lit.kind != Term::Kind::kApp) return std::nullopt;
  if (lit.head == ">=") return Difference(lit, true, Op::kGt);
  if (lit.head == "<=") return Difference(lit, false, Op::kGt);
  if (lit.head == ">") return Difference(lit, true, Op::kGe);
  if (lit.head == "<") return Difference(lit, false, Op::kGe);
  return std::nullopt;
}

}  // namespace reluproof::checker_internal
