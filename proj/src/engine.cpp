#include "eonbam/engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "eonbam/error.hpp"

namespace eonbam {

Simulation::Simulation(const ScenarioConfig& scenario, BamKind kind, double horizon,
                       AuditLevel audit)
    : scenario_(scenario),
      kind_(kind),
      bam_config_(scenario.bam_config()),
      paths_(scenario.class_paths()),
      horizon_(horizon),
      audit_level_(audit),
      network_capacity_(scenario.topology.total_capacity()),
      metrics_(bam_config_.class_count(), scenario.topology.links().size(), scenario.bin_width_h,
               horizon) {
  for (const Link& l : scenario.topology.links()) {
    grids_.emplace_back(l.capacity);
    bam_.emplace_back(bam_config_.class_count());
  }
}

void Simulation::advance_to(double t) {
  if (t < clock_) {
    throw std::invalid_argument("clock cannot move backwards to " + std::to_string(t));
  }
  // Utilization is measured over [0, horizon].
  const double t0 = std::min(clock_, horizon_);
  const double t1 = std::min(t, horizon_);
  if (t1 > t0) {
    long long network_used = 0;
    for (std::size_t l = 0; l < grids_.size(); ++l) {
      const int used = bam_[l].total_used();
      network_used += used;
      metrics_.link_utilization[l].record_interval(t0, t1, used, grids_[l].capacity());
    }
    metrics_.network_utilization.record_interval(t0, t1, static_cast<double>(network_used),
                                                 static_cast<double>(network_capacity_));
  }
  clock_ = t;
}

EstablishResult Simulation::try_establish(const Request& request) {
  if (request.arrival_time != clock_) {
    throw std::invalid_argument("request " + std::to_string(request.id) +
                                " does not arrive at the current clock");
  }
  const ClassIndex c = request.cls;
  if (c < 0 || c >= bam_config_.class_count()) {
    throw UnknownClass("request of unknown class " + std::to_string(c));
  }
  const int b = scenario_.classes[c].demand_slots;
  const Path& path = paths_[c];

  ++metrics_.arrivals[c];
  const std::size_t bin =
      metrics_.blocked_per_bin.empty() ? 0 : metrics_.network_utilization.bin_index(clock_);
  auto block = [&](BlockReason reason) -> EstablishResult {
    if (reason == BlockReason::BamRejected) {
      ++metrics_.blocked_bam[c];
    } else {
      ++metrics_.blocked_spectrum[c];
    }
    if (!metrics_.blocked_per_bin.empty()) ++metrics_.blocked_per_bin[bin];
    emit({reason == BlockReason::BamRejected ? TraceEvent::Kind::BlockedBam
                                             : TraceEvent::Kind::BlockedSpectrum,
          clock_, request.id, c, -1});
    return Blocked{reason};
  };

  for (LinkId l : path.links) {
    if (!admit(kind_, bam_config_, bam_[l], c, b)) return block(BlockReason::BamRejected);
  }

  std::vector<SpectrumGrid*> grids;
  for (LinkId l : path.links) grids.push_back(&grids_[l]);
  const std::vector<const SpectrumGrid*> const_grids(grids.begin(), grids.end());
  const auto range = first_fit(const_grids, b);
  if (!range) return block(BlockReason::NoSpectrum);

  Lightpath lp{request.id, request, *range, {}};
  for (LinkId l : path.links) {
    lp.attribution.push_back(commit(kind_, bam_config_, bam_[l], c, b));
  }
  occupy(grids, *range);
  departures_.push(Departure{lp.end_time(), c, lp.id});
  live_.emplace(lp.id, std::move(lp));

  ++metrics_.established[c];
  if (!metrics_.established_per_bin.empty()) ++metrics_.established_per_bin[bin];
  emit({TraceEvent::Kind::Established, clock_, request.id, c, range->start});
  return Established{request.id, *range};
}

void Simulation::handle_departure(std::uint64_t lightpath_id) {
  auto it = live_.find(lightpath_id);
  if (it == live_.end()) {
    throw UnknownLightpath("no live lightpath " + std::to_string(lightpath_id));
  }
  const Lightpath& lp = it->second;
  const ClassIndex c = lp.request.cls;
  const Path& path = paths_[c];
  std::vector<SpectrumGrid*> grids;
  for (LinkId l : path.links) grids.push_back(&grids_[l]);
  release(grids, lp.slots);
  for (std::size_t i = 0; i < path.links.size(); ++i) {
    release_volumetric(kind_, bam_config_, bam_[path.links[i]], c, lp.attribution[i]);
  }
  emit({TraceEvent::Kind::Departed, clock_, lp.id, c, lp.slots.start});
  live_.erase(it);
}

void Simulation::process_departures_until(double t) {
  while (!departures_.empty() && departures_.top().time <= t) {
    const Departure d = departures_.top();
    departures_.pop();
    advance_to(d.time);
    handle_departure(d.id);
    after_event();
  }
  advance_to(t);
}

void Simulation::on_arrival(const Request& request) {
  process_departures_until(request.arrival_time);
  try_establish(request);
  after_event();
}

void Simulation::run(std::span<const Request> requests) {
  for (const Request& r : requests) on_arrival(r);
  while (!departures_.empty()) process_departures_until(departures_.top().time);
}

void Simulation::run(ArrivalStream& stream) {
  while (!stream.done()) on_arrival(stream.next());
  while (!departures_.empty()) process_departures_until(departures_.top().time);
}

void Simulation::after_event() {
  ++events_;
  if (audit_level_ == AuditLevel::None) return;
  audit(events_ % 1024 == 0);
}

void Simulation::emit(const TraceEvent& e) const {
  if (observer_) observer_(e);
}

void Simulation::audit(bool rebuild_occupancy) const {
  auto fail = [&](const std::string& what) {
    throw AuditFailure("t=" + std::to_string(clock_) + ": " + what);
  };
  for (std::size_t l = 0; l < grids_.size(); ++l) {
    if (grids_[l].occupied_count() != bam_[l].total_used()) {
      fail("link " + std::to_string(l) + " grid holds " +
           std::to_string(grids_[l].occupied_count()) + " slots but BAM accounts " +
           std::to_string(bam_[l].total_used()));
    }
    if (auto v = check_invariants(kind_, bam_config_, bam_[l])) {
      fail("link " + std::to_string(l) + ": " + *v);
    }
  }
  for (int c = 0; c < metrics_.class_count(); ++c) {
    if (metrics_.blocked(c) + metrics_.established[c] != metrics_.arrivals[c]) {
      fail("class " + std::to_string(c) + " outcomes do not add up to arrivals");
    }
  }
  if (!rebuild_occupancy) return;

  std::vector<SpectrumGrid> expected;
  std::vector<BamState> usage;
  for (const SpectrumGrid& g : grids_) {
    expected.emplace_back(g.capacity());
    usage.emplace_back(bam_config_.class_count());
  }
  for (const auto& [id, lp] : live_) {
    const ClassIndex c = lp.request.cls;
    if (lp.slots.length != scenario_.classes[c].demand_slots) {
      fail("lightpath " + std::to_string(id) + " has the wrong width");
    }
    for (LinkId l : paths_[c].links) {
      for (int s = lp.slots.start; s < lp.slots.end(); ++s) {
        if (expected[l].occupied(s)) fail("two lightpaths share a slot");
        expected[l].set(s, true);
      }
      usage[l].used[c] += lp.slots.length;
    }
  }
  for (std::size_t l = 0; l < grids_.size(); ++l) {
    if (!(expected[l] == grids_[l])) {
      fail("link " + std::to_string(l) + " grid differs from the live lightpath set");
    }
    if (usage[l].used != bam_[l].used) {
      fail("link " + std::to_string(l) + " per-class usage differs from the live set");
    }
  }
}

std::uint64_t replication_seed(std::uint64_t base_seed, int replication) {
  return mix_seed(base_seed, static_cast<std::uint64_t>(replication));
}

RawMetrics run_replication(const ScenarioConfig& scenario, BamKind kind, int replication,
                           std::uint64_t base_seed, AuditLevel audit) {
  scenario.validate();
  const double horizon = last_arrival_time(scenario.classes, scenario.total_requests);
  Simulation sim(scenario, kind, horizon, audit);
  ArrivalStream stream(scenario.classes, scenario.total_requests,
                       replication_seed(base_seed, replication), scenario.mean_hold_h);
  sim.run(stream);
  if (audit != AuditLevel::None) sim.audit(true);
  return std::move(sim).take_metrics();
}

}  // namespace eonbam
