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

// reluproof verify <net.json> <prop.vnnlib> [--proof P] [--workers N]
//                  [--split-depth K] [--no-cdcl] [--timeout S]
// reluproof check <problem> <proof>

#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "reluproof/checker.h"
#include "reluproof/frontend.h"
#include "reluproof/pipeline.h"

namespace {

constexpr int kExitUsage = 64;

int RunVerify(const std::string& net_path, const std::string& prop_path,
              const reluproof::VerifyOptions& options) {
  using reluproof::Verdict;
  reluproof::VerifyOutcome out;
  try {
    const reluproof::Network net = reluproof::ParseNetwork(net_path);
    const reluproof::PropertySpec prop = reluproof::ParseProperty(prop_path);
    out = reluproof::Verify(net, prop, options);
  } catch (const reluproof::FrontendError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  for (const std::string& w : out.warnings) std::cerr << "warning: " << w << "\n";
  std::cerr << "decisions=" << out.stats.decisions << " conflicts=" << out.stats.conflicts
            << " t-lemmas=" << out.stats.lemmas
            << " leaf-certificates=" << out.stats.leaf_certificates
            << " proof-steps=" << out.proof_steps << "\n";

  if (const auto* sat = std::get_if<reluproof::SatVerdict>(&out.verdict)) {
    std::cout << "sat\n";
    for (int i = 0; i < sat->assignment.size(); ++i)
      std::cout << "X_" << i << " = " << sat->assignment(i) << "\n";
    for (int i = 0; i < out.outputs.size(); ++i)
      std::cout << "Y_" << i << " = " << out.outputs(i) << "\n";
    return 0;
  }
  if (std::holds_alternative<reluproof::UnsatVerdict>(out.verdict)) {
    std::cout << "unsat\n";
    if (options.proof_path) std::cout << "proof: " << *options.proof_path << "\n";
    return 1;
  }
  if (std::holds_alternative<reluproof::UnsatPreprocessingVerdict>(out.verdict)) {
    std::cout << "unsat (preprocessing, no proof)\n";
    return 2;
  }
  std::cout << "timeout\n";
  return 3;
}

int RunCheck(const std::string& problem, const std::string& proof) {
  reluproof::CheckReport report;
  try {
    report = reluproof::CheckProofFiles(problem, proof);
  } catch (const reluproof::ProofSyntaxError& e) {
    std::cout << "verdict: parse error\n" << e.what() << "\n";
    return 30;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::cout << "verdict: " << reluproof::CheckVerdictName(report.verdict) << "\n";
  std::cout << "steps: " << report.steps << "\n";
  if (!report.holes.empty()) {
    std::cout << "holes:";
    for (const std::string& h : report.holes) std::cout << " " << h;
    std::cout << "\n";
  }
  if (report.failing_step) std::cout << "failing step: " << *report.failing_step << "\n";
  if (!report.reason.empty()) std::cout << "reason: " << report.reason << "\n";
  std::cout << "time: " << report.seconds << "s\n";
  switch (report.verdict) {
    case reluproof::CheckVerdict::kValid:
      return 0;
    case reluproof::CheckVerdict::kHoley:
      return 10;
    case reluproof::CheckVerdict::kInvalid:
      return 20;
  }
  return 20;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proof-producing verifier for ReLU networks"};
  app.require_subcommand(1);

  std::string net_path, prop_path;
  std::string proof_path, problem_path;
  reluproof::VerifyOptions options;
  bool no_cdcl = false;
  std::vector<int> faults;
  CLI::App* verify = app.add_subcommand("verify", "decide a property and optionally write a proof");
  verify->add_option("network", net_path, "network JSON")->required();
  verify->add_option("property", prop_path, "VNN-LIB property")->required();
  verify->add_option("--proof", proof_path, "Alethe proof output");
  verify->add_option("--problem", problem_path, "SMT-LIB problem output (default: <proof>.problem.smt2)");
  verify->add_option("--workers", options.workers, "worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--split-depth", options.split_depth, "number of ReLUs to split on")
      ->check(CLI::NonNegativeNumber);
  verify->add_flag("--no-cdcl", no_cdcl, "learn naive negated-decision clauses only");
  verify->add_option("--timeout", options.timeout_seconds, "seconds")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", options.seed, "randomized task start delays");
#ifdef RELUPROOF_FAULT_INJECTION
  verify->add_option("--inject-fault", faults, "corrupt the n-th certificate of each solver");
#endif

  std::string check_problem, check_proof;
  CLI::App* check = app.add_subcommand("check", "check an Alethe proof against its problem");
  check->add_option("problem", check_problem, "SMT-LIB problem")->required();
  check->add_option("proof", check_proof, "Alethe proof")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*verify) {
    if (!proof_path.empty()) options.proof_path = proof_path;
    if (!problem_path.empty()) options.problem_path = problem_path;
    options.pdcl = !no_cdcl;
    options.fault_certificates.insert(faults.begin(), faults.end());
    return RunVerify(net_path, prop_path, options);
  }
  return RunCheck(check_problem, check_proof);
}
