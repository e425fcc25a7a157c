#include "eonbam/scenario.hpp"

#include <cmath>
#include <set>

#include "eonbam/error.hpp"

namespace eonbam {

void ScenarioConfig::validate() const {
  if (capacity_slots <= 0) throw ValidationError("capacity_slots must be positive");
  for (const Link& l : topology.links()) {
    if (l.capacity != capacity_slots) {
      throw ValidationError("every link must have capacity_slots = " +
                            std::to_string(capacity_slots));
    }
  }
  if (classes.empty()) throw ValidationError("at least one traffic class is required");
  double share = 0.0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const TrafficClassSpec& s = classes[c];
    const std::string who = "class " + std::to_string(c);
    if (s.index != static_cast<ClassIndex>(c)) {
      throw ValidationError(who + " has index " + std::to_string(s.index));
    }
    if (s.demand_slots < 1) throw ValidationError(who + ": demand_slots must be >= 1");
    if (s.demand_slots > capacity_slots) {
      throw ValidationError(who + ": demand_slots exceeds link capacity");
    }
    if (!(s.inter_arrival_h > 0)) throw ValidationError(who + ": inter_arrival_h must be > 0");
    if (!(s.start_delay_h >= 0)) throw ValidationError(who + ": start_delay_h must be >= 0");
    if (!(s.nominal_share_pct > 0)) throw ValidationError(who + ": nominal_share_pct must be > 0");
    share += s.nominal_share_pct;
    try {
      resolve_path(topology, s.path);
    } catch (const NoSuchLink& e) {
      throw ValidationError(who + " path: NoSuchLink: " + e.what());
    } catch (const UnknownNode& e) {
      throw ValidationError(who + " path: UnknownNode: " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError(who + " path: " + e.what());
    }
  }
  if (std::abs(share - 100.0) > 1e-9) {
    throw ValidationError("nominal shares sum to " + std::to_string(share) + ", expected 100");
  }
  bam_config();  // rounding must land exactly on capacity
  if (bams.empty()) throw ValidationError("at least one BAM must be selected");
  if (std::set<BamKind>(bams.begin(), bams.end()).size() != bams.size()) {
    throw ValidationError("BAM list has duplicates");
  }
  if (replications < 1) throw ValidationError("replications must be >= 1");
  if (!(mean_hold_h > 0)) throw ValidationError("mean_hold_h must be > 0");
  if (!(bin_width_h > 0)) throw ValidationError("bin_width_h must be > 0");
  if (!topology.find_link(headline_from, headline_to)) {
    throw ValidationError("headline_link " + std::to_string(headline_from.value) + "->" +
                          std::to_string(headline_to.value) + " is not a link");
  }
}

BamConfig ScenarioConfig::bam_config() const {
  std::vector<double> shares;
  for (const auto& c : classes) shares.push_back(c.nominal_share_pct);
  return BamConfig::from_shares(shares, capacity_slots);
}

std::vector<Path> ScenarioConfig::class_paths() const {
  std::vector<Path> paths;
  for (const auto& c : classes) paths.push_back(resolve_path(topology, c.path));
  return paths;
}

LinkId ScenarioConfig::headline_link() const {
  auto l = topology.find_link(headline_from, headline_to);
  if (!l) throw ValidationError("headline link is not part of the topology");
  return *l;
}

ScenarioConfig paper_scenario(int id) {
  const auto specs = scenario_presets(id);
  ScenarioConfig s;
  s.id = id;
  s.name = "scenario0" + std::to_string(id);
  s.capacity_slots = 400;
  s.topology = build_paper_topology(400);
  s.classes.assign(specs.begin(), specs.end());
  return s;
}

}  // namespace eonbam
