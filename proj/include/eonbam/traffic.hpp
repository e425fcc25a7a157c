#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "eonbam/bam.hpp"
#include "eonbam/topology.hpp"

namespace eonbam {

inline constexpr double kPaperMeanHoldHours = 2500.0;

struct TrafficClassSpec {
  ClassIndex index = 0;  // also the priority: larger is higher
  std::string name;
  int demand_slots = 1;
  double inter_arrival_h = 1.0;
  double start_delay_h = 0.0;
  std::vector<NodeId> path;
  double nominal_share_pct = 0.0;

  bool operator==(const TrafficClassSpec&) const = default;
};

struct Request {
  std::uint64_t id = 0;
  ClassIndex cls = 0;
  double arrival_time = 0.0;  // hours
  double hold_time = 0.0;     // hours
  bool operator==(const Request&) const = default;
};

/// SplitMix64 finalizer; used to derive independent seeds from (seed, index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Exponential hold times from a 64-bit Mersenne Twister via inverse CDF on a
/// 53-bit uniform, so draws are bit-identical across standard libraries.
class HoldTimeSampler {
 public:
  HoldTimeSampler(std::uint64_t seed, double mean_hours);
  double next();

 private:
  std::mt19937_64 engine_;
  double mean_;
};

/// Lazily merges the deterministic per-class schedules D_c + k*T_c.
/// Coincident arrivals go higher priority first. Hold times come from one
/// substream per class, derived from (seed, class index).
class ArrivalStream {
 public:
  ArrivalStream(std::span<const TrafficClassSpec> specs, std::uint64_t total_requests,
                std::uint64_t seed, double mean_hold_hours = kPaperMeanHoldHours);

  bool done() const { return emitted_ >= total_; }
  Request next();

 private:
  struct ClassCursor {
    const TrafficClassSpec* spec;
    std::uint64_t k = 0;
    HoldTimeSampler hold;
    double next_time() const {
      return spec->start_delay_h + static_cast<double>(k) * spec->inter_arrival_h;
    }
  };
  std::vector<ClassCursor> cursors_;
  std::uint64_t total_;
  std::uint64_t emitted_ = 0;
};

/// The first `total_requests` requests of the merged stream.
std::vector<Request> generate_arrivals(std::span<const TrafficClassSpec> specs,
                                       std::uint64_t total_requests, std::uint64_t seed,
                                       double mean_hold_hours = kPaperMeanHoldHours);

/// Arrival time of the last of `total_requests` merged requests (0 if none).
double last_arrival_time(std::span<const TrafficClassSpec> specs, std::uint64_t total_requests);

/// Bronze/Silver/Gold specs of the four evaluation scenarios (ids 1..4):
/// demands 1/2/5 slots, paths 14-4-2 / 14-4-7 / 14-4-5, shares 20/30/50%.
/// Throws UnknownScenario for any other id.
std::array<TrafficClassSpec, 3> scenario_presets(int id);

}  // namespace eonbam
