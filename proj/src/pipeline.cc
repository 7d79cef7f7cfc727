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

#include "reluproof/pipeline.h"

#include <chrono>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "reluproof/preprocess.h"
#include "reluproof/proofwriter.h"

namespace reluproof {

bool OutputsSatisfy(const PropertySpec& property, const RationalVector& outputs) {
  for (const OutputConstraint& c : property.output_constraints) {
    Rational lhs = 0;
    for (size_t i = 0; i < c.coeffs.size(); ++i) lhs += c.coeffs[i] * outputs(static_cast<int>(i));
    if (c.relation == Relation::kLessEqual ? lhs > c.rhs : lhs < c.rhs) return false;
  }
  return true;
}

namespace {

// Sets `flag` after `seconds` unless destroyed first.
class Deadline {
 public:
  Deadline(double seconds, std::atomic<bool>* flag) {
    if (seconds <= 0) return;
    thread_ = std::thread([this, seconds, flag]() {
      std::unique_lock<std::mutex> lock(mu_);
      if (!cv_.wait_for(lock, std::chrono::duration<double>(seconds), [this] { return done_; }))
        *flag = true;
    });
  }
  ~Deadline() {
    {
      std::lock_guard<std::mutex> lock(mu_);
      done_ = true;
    }
    cv_.notify_all();
    if (thread_.joinable()) thread_.join();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  bool done_ = false;
  std::thread thread_;
};

}  // namespace

VerifyOutcome Verify(const Network& net, const PropertySpec& property, const VerifyOptions& options) {
  VerifyOutcome out;
  out.compiled = Compile(net, property);
  out.compiled.query = TightenBounds(out.compiled.query, net);
  const TableauQuery& q = out.compiled.query;
  if (std::optional<Verdict> trivial = DetectTrivialUnsat(q)) {
    out.verdict = *trivial;
    return out;
  }

  std::ofstream proof_file;
  std::optional<ProofSink> sink;
  if (options.proof_path) {
    const std::string problem_path =
        options.problem_path ? *options.problem_path : *options.proof_path + ".problem.smt2";
    std::ofstream problem(problem_path);
    if (!problem) throw std::runtime_error("cannot write " + problem_path);
    problem << SerializeProblem(q);
    proof_file.open(*options.proof_path);
    if (!proof_file) throw std::runtime_error("cannot write " + *options.proof_path);
    sink.emplace(&proof_file);
    EmitProblemAssumptions(q, &*sink);
  }

  std::atomic<bool> stop{false};
  SncResult r;
  {
    Deadline deadline(options.timeout_seconds, &stop);
    SncOptions snc;
    snc.workers = options.workers;
    snc.split_depth = options.split_depth;
    snc.pdcl = options.pdcl;
    snc.seed = options.seed;
    snc.tsolver.fault_certificates = options.fault_certificates;
    snc.check_chains = options.check_chains;
    snc.stop = &stop;
    r = SolveSnc(q, out.compiled.abstraction, sink ? &*sink : nullptr, snc);
  }
  out.stats = r.stats;
  out.warnings = r.warnings;
  out.theory_clauses = std::move(r.theory_clauses);
  out.derived_clauses = std::move(r.derived_clauses);
  if (sink) {
    sink->Close();
    out.proof_steps = sink->lines();
  }

  switch (r.status) {
    case SncStatus::kSat: {
      const RationalVector x = r.witness->head(q.input_dim);
      out.outputs = EvalNetwork(net, x);
      if (!OutputsSatisfy(property, out.outputs))
        throw std::logic_error("witness does not violate the property on replay");
      out.verdict = SatVerdict{x};
      break;
    }
    case SncStatus::kUnsat:
      out.verdict = UnsatVerdict{options.proof_path.value_or("")};
      break;
    case SncStatus::kUnknown:
      out.verdict = TimeoutVerdict{};
      break;
  }
  return out;
}

}  // namespace reluproof
