#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "metext/extension.hpp"

namespace metext {

struct SuiteConfig {
  std::uint64_t seed = 0;
  std::size_t triples = 500;  // sampled triples for the metric sweeps
  std::size_t pairs = 200;
  std::size_t tuples = 300;   // double difference identities
  int grid_n = 16;
  double tolerance = kTolerance;
};

struct CheckResult {
  std::string suite;
  std::string anchor;  // property being checked
  bool ran = true;     // false: preconditions absent (reported as not run)
  bool soft = false;   // reported, never fails the run
  std::size_t checks = 0;
  std::size_t passed = 0;
  std::string detail;

  bool ok() const { return !ran || soft || passed == checks; }
};

struct SuiteReport {
  std::vector<CheckResult> results;
  bool ok() const;
  std::string text() const;
};

/// complex, vertex, path, extension, oracle, probes, workbench
const std::vector<std::string>& suite_names();

/// Runs the named suites ("all" for every one) against one metric. Checks
/// run on a worker pool capped by METRIC_EXT_THREADS; results keep the
/// declaration order. InternalInconsistency from any solver propagates.
SuiteReport run_suites(const ExtendedMetric& metric, const std::vector<std::string>& suites,
                       const SuiteConfig& config = {});

/// Worker count from METRIC_EXT_THREADS (default: hardware concurrency).
unsigned worker_count();

/// Runs jobs[i] for every i on the worker pool.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& job);

}  // namespace metext
