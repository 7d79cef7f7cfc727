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

#include "reluproof/preprocess.h"

#include <stdexcept>

namespace reluproof {

namespace {

using Bound1 = std::optional<Rational>;

void Intersect(TableauQuery& q, VarIndex i, const Bound1& lo, const Bound1& hi) {
  if (lo && (!q.lower[i] || *q.lower[i] < *lo)) q.lower[i] = lo;
  if (hi && (!q.upper[i] || *hi < *q.upper[i])) q.upper[i] = hi;
}

}  // namespace

TableauQuery TightenBounds(const TableauQuery& q, const Network& net) {
  if (static_cast<size_t>(net.num_relus()) != q.relus.size())
    throw std::invalid_argument("query was not compiled from this network");
  TableauQuery out = q;
  std::vector<int> relu_of_row(q.num_rows(), -1);
  for (size_t k = 0; k < q.relus.size(); ++k) {
    const ReluTriple& r = q.relus[k];
    for (int j = 0; j < q.num_rows(); ++j) {
      if (q.rows(j, r.f) == Rational(1) && q.rows(j, r.aux) == Rational(-1)) {
        relu_of_row[j] = static_cast<int>(k);
        break;
      }
    }
  }

  for (int j = 0; j < q.num_rows(); ++j) {
    if (relu_of_row[j] >= 0) {
      const ReluTriple& r = q.relus[relu_of_row[j]];
      const Bound1& lb = out.lower[r.b];
      const Bound1& ub = out.upper[r.b];
      const Rational zero(0);
      Intersect(out, r.f, lb ? Bound1(max(*lb, zero)) : Bound1(zero), ub ? Bound1(max(*ub, zero)) : Bound1());
      Intersect(out, r.aux, ub ? Bound1(max(-*ub, zero)) : Bound1(zero),
                lb ? Bound1(max(-*lb, zero)) : Bound1());
      continue;
    }
    VarIndex d = -1;
    for (int i = q.num_vars - 1; i >= 0 && d < 0; --i)
      if (!q.rows(j, i).is_zero()) d = i;
    if (d < 0) continue;
    // a_d x_d = -sum_{i != d} a_i x_i, so x_d = sum_{i != d} (-a_i / a_d) x_i.
    const Rational scale = Rational(-1) / q.rows(j, d);
    Bound1 lo = Rational(0), hi = Rational(0);
    for (int i = 0; i < q.num_vars; ++i) {
      if (i == d || q.rows(j, i).is_zero()) continue;
      const Rational c = q.rows(j, i) * scale;
      const Bound1& for_lo = c.sign() > 0 ? out.lower[i] : out.upper[i];
      const Bound1& for_hi = c.sign() > 0 ? out.upper[i] : out.lower[i];
      if (lo) lo = for_lo ? Bound1(*lo + c * *for_lo) : Bound1();
      if (hi) hi = for_hi ? Bound1(*hi + c * *for_hi) : Bound1();
    }
    Intersect(out, d, lo, hi);
  }
  return out;
}

std::optional<Verdict> DetectTrivialUnsat(const TableauQuery& q) {
  for (int i = 0; i < q.num_vars; ++i)
    if (q.lower[i] && q.upper[i] && *q.upper[i] < *q.lower[i]) return UnsatPreprocessingVerdict{};
  return std::nullopt;
}

}  // namespace reluproof
