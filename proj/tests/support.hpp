// Helpers shared by the unit and acceptance suites.
#pragma once

#include <random>
#include <vector>

#include "eonbam/engine.hpp"
#include "eonbam/scenario.hpp"
#include "oracles.hpp"

namespace testing_support {

/// Paper topology and classes shrunk to S = 10 slots: pools (2, 3, 5),
/// demands (1, 2, 5).
inline eonbam::ScenarioConfig micro_scenario() {
  eonbam::ScenarioConfig s = eonbam::paper_scenario(1);
  s.id = 99;
  s.name = "micro";
  s.capacity_slots = 10;
  s.topology = eonbam::build_paper_topology(10);
  s.total_requests = 12;
  s.replications = 1;
  s.bin_width_h = 1.0;
  return s;
}

/// The twelve hand-scheduled requests of the micro scenario, already in event
/// order. Several arrivals coincide with departures (t = 1, 3, 10).
inline std::vector<eonbam::Request> micro_requests() {
  // id, class, arrival, hold
  return {
      {0, 2, 0.0, 1.0},    // Gold
      {1, 2, 0.0, 1.0},    // second Gold: only ATCS can lend pools 0/1
      {2, 1, 1.0, 6.0},    // Silver
      {3, 0, 1.0, 1.0},    // Bronze
      {4, 0, 2.0, 9.0},    // Bronze
      {5, 1, 3.0, 5.0},    // Silver
      {6, 0, 3.0, 12.0},   // Bronze
      {7, 2, 4.0, 7.0},    // Gold
      {8, 0, 5.0, 1.0},    // Bronze
      {9, 1, 6.0, 11.0},   // Silver
      {10, 2, 10.0, 12.0}, // Gold
      {11, 0, 10.0, 10.0}, // Bronze
  };
}

inline std::string step_name(eonbam::TraceEvent::Kind k) {
  switch (k) {
    case eonbam::TraceEvent::Kind::Established: return "est";
    case eonbam::TraceEvent::Kind::BlockedBam: return "bam";
    case eonbam::TraceEvent::Kind::BlockedSpectrum: return "spec";
    case eonbam::TraceEvent::Kind::Departed: return "dep";
  }
  return "?";
}

/// Runs the engine on explicit requests and returns its trace in oracle form.
inline std::vector<oracle::Step> engine_trace(const eonbam::ScenarioConfig& scenario,
                                              eonbam::BamKind kind,
                                              const std::vector<eonbam::Request>& requests) {
  const double horizon = requests.empty() ? 0.0 : requests.back().arrival_time;
  eonbam::Simulation sim(scenario, kind, horizon, eonbam::AuditLevel::EveryEvent);
  std::vector<oracle::Step> steps;
  sim.set_observer([&](const eonbam::TraceEvent& e) {
    steps.push_back({step_name(e.kind), e.time, static_cast<int>(e.request_id), e.cls,
                     e.slot_start});
  });
  sim.run(requests);
  sim.audit(true);
  return steps;
}

/// The same requests replayed by the independent oracle.
inline std::vector<oracle::Step> oracle_trace(const eonbam::ScenarioConfig& scenario,
                                              eonbam::BamKind kind,
                                              const std::vector<eonbam::Request>& requests) {
  std::vector<int> demand;
  std::vector<std::vector<int>> links;
  for (const auto& c : scenario.classes) {
    demand.push_back(c.demand_slots);
    std::vector<int> ls;
    for (auto l : eonbam::resolve_path(scenario.topology, c.path).links) ls.push_back(static_cast<int>(l));
    links.push_back(ls);
  }
  std::vector<oracle::Req> reqs;
  for (const auto& r : requests) {
    reqs.push_back({static_cast<int>(r.id), r.cls, r.arrival_time, r.hold_time});
  }
  return oracle::replay(std::string(eonbam::to_string(kind)), scenario.capacity_slots,
                        scenario.bam_config().pools(), demand, links,
                        static_cast<int>(scenario.topology.links().size()), reqs);
}

/// Random request list in event order: integer arrival times (so ties occur),
/// integer hold times (so departures coincide with arrivals).
inline std::vector<eonbam::Request> random_requests(std::mt19937_64& rng, int count, int classes) {
  std::vector<eonbam::Request> out;
  std::uniform_int_distribution<int> gap(0, 2);
  std::uniform_int_distribution<int> cls(0, classes - 1);
  std::uniform_int_distribution<int> hold(1, 12);
  double t = 0;
  for (int i = 0; i < count; ++i) {
    t += gap(rng);
    out.push_back({static_cast<std::uint64_t>(i), cls(rng), t, static_cast<double>(hold(rng))});
  }
  // Equal times: higher class first, then id.
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.arrival_time != b.arrival_time) return a.arrival_time < b.arrival_time;
    return a.cls > b.cls;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = i;
  return out;
}

}  // namespace testing_support
