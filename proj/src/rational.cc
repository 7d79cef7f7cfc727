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

#include "reluproof/rational.h"

#include <cctype>
#include <cstdlib>

namespace reluproof {

namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void BadNumber(std::string_view text) {
  throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(num, 1) / mpq_class(den, 1);
  value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::Parse(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) BadNumber(text);

  mpq_class result;
  if (const size_t slash = s.find('/'); slash != std::string_view::npos) {
    const std::string_view num = s.substr(0, slash);
    const std::string_view den = s.substr(slash + 1);
    if (!AllDigits(num) || !AllDigits(den)) BadNumber(text);
    mpz_class d(std::string(den), 10);
    if (d == 0) BadNumber(text);
    result = mpq_class(mpz_class(std::string(num), 10), d);
  } else {
    long exponent = 0;
    if (const size_t e = s.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp.empty() && (exp.front() == '-' || exp.front() == '+')) {
        exp_negative = exp.front() == '-';
        exp.remove_prefix(1);
      }
      if (!AllDigits(exp) || exp.size() > 6) BadNumber(text);
      exponent = std::strtol(std::string(exp).c_str(), nullptr, 10);
      if (exp_negative) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string digits;
    if (const size_t dot = s.find('.'); dot != std::string_view::npos) {
      const std::string_view whole = s.substr(0, dot);
      const std::string_view frac = s.substr(dot + 1);
      if ((whole.empty() && frac.empty()) || (!whole.empty() && !AllDigits(whole)) ||
          (!frac.empty() && !AllDigits(frac)))
        BadNumber(text);
      digits = std::string(whole) + std::string(frac);
      exponent -= static_cast<long>(frac.size());
    } else {
      if (!AllDigits(s)) BadNumber(text);
      digits = std::string(s);
    }
    if (digits.empty()) digits = "0";
    result = mpq_class(mpz_class(digits, 10));
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent < 0)
      result /= mpq_class(scale);
    else
      result *= mpq_class(scale);
  }
  result.canonicalize();
  if (negative) result = -result;
  return Rational(result);
}

std::string Rational::ToString() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::ToSmtLib() const {
  const mpz_class num = abs(value_.get_num());
  std::string body = is_integer() ? num.get_str()
                                  : "(/ " + num.get_str() + " " + value_.get_den().get_str() + ")";
  return sign() < 0 ? "(- " + body + ")" : body;
}

size_t Rational::Hash() const {
  const std::string s = ToString();
  return std::hash<std::string>{}(s);
}

}  // namespace reluproof
