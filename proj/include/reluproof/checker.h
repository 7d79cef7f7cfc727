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

// Standalone checker for the Alethe subset the verifier emits. It reads the
// problem and proof text on its own and shares only the Rational type with
// the rest of the library.

#ifndef RELUPROOF_CHECKER_H_
#define RELUPROOF_CHECKER_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace reluproof {

enum class CheckVerdict { kValid, kHoley, kInvalid };

const char* CheckVerdictName(CheckVerdict v);

struct CheckReport {
  CheckVerdict verdict = CheckVerdict::kInvalid;
  std::vector<std::string> holes;
  std::optional<std::string> failing_step;
  std::string reason;
  int64_t steps = 0;
  double seconds = 0;
};

// Malformed s-expressions or commands.
class ProofSyntaxError : public std::runtime_error {
 public:
  ProofSyntaxError(const std::string& message, int line)
      : std::runtime_error(message + " at line " + std::to_string(line)), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct ParsedCommand {
  std::string id;
  std::string rule;  // "assume" for assumptions
  std::vector<std::string> premises;
  int clause_size = 0;
  int line = 0;
};

// Parses a proof and resolves premises. Throws ProofSyntaxError on malformed
// input and on premises that do not name an earlier command.
std::vector<ParsedCommand> ParseProof(std::string_view proof);

CheckReport CheckProofText(std::string_view problem, std::string_view proof);
// Throws std::runtime_error when a file cannot be read.
CheckReport CheckProofFiles(const std::string& problem_path, const std::string& proof_path);

}  // namespace reluproof

#endif  // RELUPROOF_CHECKER_H_
