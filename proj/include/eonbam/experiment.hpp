#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "eonbam/engine.hpp"
#include "eonbam/metrics.hpp"
#include "eonbam/scenario.hpp"

namespace eonbam {

struct BamResult {
  BamKind kind;
  std::vector<std::uint64_t> seeds;  // per replication
  std::vector<RawMetrics> runs;
  AggregatedMetrics aggregate;
};

struct ExperimentResult {
  ScenarioConfig scenario;
  std::vector<BamResult> bams;  // in scenario.bams order

  const BamResult& of(BamKind kind) const;
};

struct ExperimentOptions {
  int jobs = 1;
  AuditLevel audit = AuditLevel::None;
};

/// Runs scenario.replications replications for each BAM in scenario.bams.
/// Replication r uses replication_seed(scenario.seed, r) under every BAM, so
/// results do not depend on `jobs`.
ExperimentResult run_experiment(const ScenarioConfig& scenario, ExperimentOptions options = {});

}  // namespace eonbam
