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

// Forward interval bound propagation.

#ifndef RELUPROOF_PREPROCESS_H_
#define RELUPROOF_PREPROCESS_H_

#include <optional>

#include "reluproof/model.h"

namespace reluproof {

// Walks the rows in order. A ReLU row maps the b interval to f and aux; any
// other row defines its highest-index variable from the rest. Results are
// intersected with the existing bounds, so bounds never loosen.
TableauQuery TightenBounds(const TableauQuery& q, const Network& net);

// UnsatPreprocessingVerdict when some l_i > u_i.
std::optional<Verdict> DetectTrivialUnsat(const TableauQuery& q);

}  // namespace reluproof

#endif  // RELUPROOF_PREPROCESS_H_
