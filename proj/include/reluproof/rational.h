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

#ifndef RELUPROOF_RATIONAL_H_
#define RELUPROOF_RATIONAL_H_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace reluproof {

// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int value) : value_(value) {}  // NOLINT: Eigen needs the implicit form
  Rational(long value) : value_(value) {}  // NOLINT
  Rational(long long value) : value_(static_cast<long>(value)) {}  // NOLINT
  Rational(long num, long den);
  explicit Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

  // Accepts "p", "p/q", decimals ("-0.125", "3."), and exponents ("1e-3").
  static Rational Parse(std::string_view text);

  const mpq_class& get() const { return value_; }
  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  // "p" or "p/q".
  std::string ToString() const;
  // SMT-LIB2 literal: "3", "(- 3)", "(/ 1 2)", "(- (/ 1 2))".
  std::string ToSmtLib() const;
  double ToDouble() const { return value_.get_d(); }

  size_t Hash() const;

 private:
  mpq_class value_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.ToString(); }

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

}  // namespace reluproof

template <>
struct std::hash<reluproof::Rational> {
  size_t operator()(const reluproof::Rational& r) const { return r.Hash(); }
};

namespace Eigen {

template <>
struct NumTraits<reluproof::Rational> : GenericNumTraits<reluproof::Rational> {
  using Real = reluproof::Rational;
  using NonInteger = reluproof::Rational;
  using Nested = reluproof::Rational;
  using Literal = reluproof::Rational;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 10,
    MulCost = 20
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static Real highest() { return Real(std::numeric_limits<long>::max()); }
  static Real lowest() { return Real(std::numeric_limits<long>::min()); }
  static int digits10() { return 0; }
};

}  // namespace Eigen

#endif  // RELUPROOF_RATIONAL_H_
