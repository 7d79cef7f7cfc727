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

// Checker internals: s-expressions, term normalization and linear forms.

#ifndef RELUPROOF_SRC_CHECKER_TERMS_H_
#define RELUPROOF_SRC_CHECKER_TERMS_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reluproof/rational.h"

namespace reluproof::checker_internal {

struct Sexpr {
  bool atom = false;
  std::string text;
  std::vector<Sexpr> kids;
  int line = 0;
};

// Throws ProofSyntaxError on unbalanced parentheses.
std::vector<Sexpr> ParseSexprs(std::string_view text);

// A normalized term: numerals and constant (- c) / (/ p q) expressions fold
// into constants, and `:named` annotations are removed.
struct Term {
  enum class Kind { kConst, kSymbol, kApp };
  Kind kind = Kind::kSymbol;
  Rational value;
  std::string head;  // symbol name or operator
  std::vector<Term> args;

  std::string Key() const;
  bool IsNot() const { return kind == Kind::kApp && head == "not" && args.size() == 1; }
};

class TermContext {
 public:
  // Expands known names and records new `(! t :named n)` annotations.
  Term Normalize(const Sexpr& s);

 private:
  std::map<std::string, Term> names_;
};

Term Negate(const Term& t);

// e <op> 0 with op one of >=, >, =.
struct LinearForm {
  std::map<std::string, Rational> coeffs;
  Rational constant;
  enum class Op { kGe, kGt, kEq } op = Op::kGe;
};

// The linear form of the negation of literal `lit`; nullopt when it is not
// an arithmetic atom or its negation is a disequality.
std::optional<LinearForm> NegatedLiteralForm(const Term& lit);

std::optional<Rational> ConstantOf(const Term& t);

}  // namespace reluproof::checker_internal

#endif  // RELUPROOF_SRC_CHECKER_TERMS_H_
