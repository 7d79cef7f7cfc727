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

#include "reluproof/snc.h"

#include <algorithm>
#include <chrono>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "reluproof/satcore.h"

namespace reluproof {

std::vector<int> ChooseSplitVars(const TableauQuery& q, int k, std::vector<std::string>* warnings) {
  struct Candidate {
    int relu;
    std::optional<Rational> width;  // nullopt: unbounded
  };
  std::vector<Candidate> candidates;
  for (int r = 0; r < static_cast<int>(q.relus.size()); ++r) {
    const auto& lo = q.lower[q.relus[r].b];
    const auto& hi = q.upper[q.relus[r].b];
    if ((lo && lo->sign() >= 0) || (hi && hi->sign() <= 0)) continue;
    std::optional<Rational> width;
    if (lo && hi) width = *hi - *lo;
    candidates.push_back({r, width});
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (!a.width || !b.width) return !a.width && b.width;
    return *a.width > *b.width;
  });
  if (k > static_cast<int>(candidates.size())) {
    if (warnings)
      warnings->push_back("split depth " + std::to_string(k) + " exceeds the " +
                          std::to_string(candidates.size()) + " phase-unfixed ReLUs; using " +
                          std::to_string(candidates.size()));
    k = static_cast<int>(candidates.size());
  }
  std::vector<int> vars;
  for (int i = 0; i < k; ++i) vars.push_back(candidates[i].relu + 1);
  return vars;
}

std::vector<int> CubeOf(const std::vector<int>& split_vars, uint64_t index) {
  std::vector<int> cube;
  for (size_t d = 0; d < split_vars.size(); ++d)
    cube.push_back(((index >> d) & 1) ? -split_vars[d] : split_vars[d]);
  return cube;
}

SncResult SolveSnc(const TableauQuery& q, const AbstractionMap& abstraction, ProofSink* sink,
                   const SncOptions& options) {
  SncResult result;
  if (options.split_depth < 0) throw std::invalid_argument("split depth must be non-negative");
  result.split_vars = ChooseSplitVars(q, options.split_depth, &result.warnings);
  const uint64_t num_tasks = uint64_t{1} << result.split_vars.size();
  const int workers =
      static_cast<int>(std::max<uint64_t>(1, std::min<uint64_t>(num_tasks, std::max(1, options.workers))));

  std::atomic<bool> stop{false};
  std::atomic<uint64_t> next{0};
  std::mutex mu;
  std::vector<SubproofResult> subproofs;
  bool unknown = false;
  std::exception_ptr error;

  auto run_task = [&](uint64_t index) {
    if (options.seed != 0) {
      std::mt19937_64 rng(options.seed + index);
      std::this_thread::sleep_for(std::chrono::microseconds(rng() % 2000));
    }
    const std::vector<int> cube = CubeOf(result.split_vars, index);
    TSolver ts(q, options.tsolver);
    std::optional<AletheProofWriter> writer;
    if (sink) writer.emplace(q, sink, &ts);
    CdclOptions copts;
    copts.pdcl = options.pdcl;
    CdclCore core(&ts, abstraction, writer ? &*writer : nullptr, copts);
    SatSolver sat(abstraction.num_vars());
    sat.connect_propagator(&core);
    sat.connect_tracer(&core);
    sat.set_stop_flag(&stop);
    sat.set_check_chains(options.check_chains);
    const SatResult r = sat.solve(cube);

    std::lock_guard<std::mutex> lock(mu);
    result.stats.decisions += sat.stats().decisions;
    result.stats.conflicts += sat.stats().conflicts;
    result.stats.theory_conflicts += core.stats().theory_conflicts;
    result.stats.lemmas += static_cast<int64_t>(ts.lemmas().size());
    result.stats.leaf_certificates += static_cast<int64_t>(ts.certificates().size());
    result.stats.holes += core.stats().holes;
    result.theory_clauses.insert(result.theory_clauses.end(), core.theory_clauses().begin(),
                                 core.theory_clauses().end());
    for (const DerivedClauseRecord& d : sat.derived()) result.derived_clauses.push_back(d.clause);
    if (r == SatResult::kSat) {
      if (result.status != SncStatus::kSat) {
        result.status = SncStatus::kSat;
        result.witness = core.witness();
        if (sink) sink->Close();
      }
      stop = true;
    } else if (r == SatResult::kUnsat) {
      SubproofResult sub;
      sub.cube = cube;
      sub.clause = sat.final_clause();
      if (writer) sub.step = writer->StepOf(sat.final_clause_id());
      subproofs.push_back(std::move(sub));
    } else {
      unknown = true;
    }
  };

  auto worker = [&]() {
    while (true) {
      if (stop.load() || (options.stop && options.stop->load())) {
        stop = true;
        return;
      }
      const uint64_t index = next.fetch_add(1);
      if (index >= num_tasks) return;
      try {
        run_task(index);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
        stop = true;
      }
    }
  };

  // Forwards an external stop request to the shared flag.
  std::atomic<bool> done{false};
  std::thread watcher([&]() {
    while (!done.load()) {
      if (options.stop && options.stop->load()) stop = true;
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
  });
  std::vector<std::thread> threads;
  for (int i = 0; i < workers; ++i) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();
  done = true;
  watcher.join();
  if (error) std::rethrow_exception(error);

  if (result.status == SncStatus::kSat) return result;
  if (unknown || subproofs.size() != num_tasks) {
    result.status = SncStatus::kUnknown;
    return result;
  }
  result.status = SncStatus::kUnsat;
  if (sink) {
    result.final_step = EmitSncConclusion(result.split_vars, subproofs, sink);
    sink->Close();
  }
  return result;
}

}  // namespace reluproof
