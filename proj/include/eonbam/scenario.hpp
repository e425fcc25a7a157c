#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eonbam/bam.hpp"
#include "eonbam/topology.hpp"
#include "eonbam/traffic.hpp"

namespace eonbam {

/// Fully resolved description of one experiment.
struct ScenarioConfig {
  int id = 0;
  std::string name;

  int capacity_slots = 400;
  Topology topology;
  NodeId headline_from{14};
  NodeId headline_to{4};

  std::vector<TrafficClassSpec> classes;  // classes[c].index == c
  std::vector<BamKind> bams{BamKind::MAM, BamKind::RDM, BamKind::ATCS};

  std::uint64_t total_requests = 1'000'000;
  int replications = 10;
  std::uint64_t seed = 1;
  double mean_hold_h = kPaperMeanHoldHours;
  double bin_width_h = 100.0;

  /// Throws ValidationError naming the first violated invariant.
  void validate() const;

  BamConfig bam_config() const;
  std::vector<Path> class_paths() const;
  LinkId headline_link() const;

  bool operator==(const ScenarioConfig&) const = default;
};

/// One of the four evaluation scenarios at full scale (10 x 1,000,000 requests).
ScenarioConfig paper_scenario(int id);

}  // namespace eonbam
