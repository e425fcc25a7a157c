#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

#include "eonbam/bam.hpp"
#include "eonbam/metrics.hpp"
#include "eonbam/scenario.hpp"
#include "eonbam/spectrum.hpp"
#include "eonbam/traffic.hpp"

namespace eonbam {

enum class BlockReason { BamRejected, NoSpectrum };

struct Lightpath {
  std::uint64_t id = 0;  // id of the request that created it
  Request request;
  SlotRange slots;
  std::vector<Attribution> attribution;  // one per link of the class path
  double end_time() const { return request.arrival_time + request.hold_time; }
};

struct Established {
  std::uint64_t lightpath_id;
  SlotRange slots;
};
struct Blocked {
  BlockReason reason;
};
using EstablishResult = std::variant<Established, Blocked>;

/// One processed event, reported to an optional observer.
struct TraceEvent {
  enum class Kind { Established, BlockedBam, BlockedSpectrum, Departed };
  Kind kind;
  double time;
  std::uint64_t request_id;
  ClassIndex cls;
  int slot_start;  // -1 when blocked
  bool operator==(const TraceEvent&) const = default;
};

enum class AuditLevel {
  None,
  /// After every event: grid counts vs BAM usage, BAM invariants, counter
  /// conservation. Every 1024 events also rebuilds occupancy from the live set.
  EveryEvent,
};

/// State machine of one replication. Single-threaded.
class Simulation {
 public:
  /// `horizon` closes the utilization window and the sample grid (normally the
  /// last arrival time).
  Simulation(const ScenarioConfig& scenario, BamKind kind, double horizon,
             AuditLevel audit = AuditLevel::None);

  /// Moves the clock forward, charging current occupancy to the utilization
  /// series. Throws std::invalid_argument when t is in the past.
  void advance_to(double t);

  /// Admits `request` (arriving now) on every link of its class path, then runs
  /// First-Fit. Requires request.arrival_time == clock().
  EstablishResult try_establish(const Request& request);

  /// Tears down a live lightpath. Throws UnknownLightpath.
  void handle_departure(std::uint64_t lightpath_id);

  /// Processes every departure due at or before t (in event order), then
  /// advances to t.
  void process_departures_until(double t);

  /// Feeds arrivals in order and drains the system afterwards.
  void run(std::span<const Request> requests);
  void run(ArrivalStream& stream);

  /// Throws AuditFailure describing the first broken cross-module invariant.
  void audit(bool rebuild_occupancy = true) const;

  void set_observer(std::function<void(const TraceEvent&)> observer) {
    observer_ = std::move(observer);
  }

  double clock() const { return clock_; }
  BamKind kind() const { return kind_; }
  const BamConfig& bam_config() const { return bam_config_; }
  const std::vector<SpectrumGrid>& grids() const { return grids_; }
  const std::vector<BamState>& bam_states() const { return bam_; }
  const std::unordered_map<std::uint64_t, Lightpath>& live() const { return live_; }
  const RawMetrics& metrics() const { return metrics_; }
  RawMetrics take_metrics() && { return std::move(metrics_); }

 private:
  struct Departure {
    double time;
    ClassIndex priority;
    std::uint64_t id;
    // Min-heap order: earliest time, then higher priority, then lower id.
    bool operator>(const Departure& o) const {
      if (time != o.time) return time > o.time;
      if (priority != o.priority) return priority < o.priority;
      return id > o.id;
    }
  };

  void on_arrival(const Request& request);
  void after_event();
  void emit(const TraceEvent& e) const;

  const ScenarioConfig& scenario_;
  BamKind kind_;
  BamConfig bam_config_;
  std::vector<Path> paths_;
  double horizon_;
  AuditLevel audit_level_;
  long long network_capacity_ = 0;

  double clock_ = 0.0;
  std::vector<SpectrumGrid> grids_;
  std::vector<BamState> bam_;
  std::unordered_map<std::uint64_t, Lightpath> live_;
  std::priority_queue<Departure, std::vector<Departure>, std::greater<>> departures_;
  RawMetrics metrics_;
  std::uint64_t events_ = 0;
  std::function<void(const TraceEvent&)> observer_;
};

/// Seed of replication `replication` under base seed `base_seed`.
std::uint64_t replication_seed(std::uint64_t base_seed, int replication);

/// Runs replication `replication` of `scenario` under `kind` to quiescence.
/// Deterministic in (scenario, kind, replication, base_seed).
RawMetrics run_replication(const ScenarioConfig& scenario, BamKind kind, int replication,
                           std::uint64_t base_seed, AuditLevel audit = AuditLevel::None);

}  // namespace eonbam
