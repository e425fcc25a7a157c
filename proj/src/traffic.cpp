#include "eonbam/traffic.hpp"

#include <cmath>
#include <stdexcept>

#include "eonbam/error.hpp"

namespace eonbam {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

HoldTimeSampler::HoldTimeSampler(std::uint64_t seed, double mean_hours)
    : engine_(seed), mean_(mean_hours) {
  if (!(mean_hours > 0)) throw std::invalid_argument("mean hold time must be positive");
}

double HoldTimeSampler::next() {
  // Midpoint of one of 2^53 equal cells: u lies strictly inside (0, 1).
  const double u = (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  return -mean_ * std::log(u);
}

ArrivalStream::ArrivalStream(std::span<const TrafficClassSpec> specs,
                             std::uint64_t total_requests, std::uint64_t seed,
                             double mean_hold_hours)
    : total_(total_requests) {
  if (specs.empty()) throw std::invalid_argument("at least one traffic class is required");
  for (const TrafficClassSpec& s : specs) {
    if (!(s.inter_arrival_h > 0) || s.start_delay_h < 0 || s.demand_slots < 1) {
      throw std::invalid_argument("invalid traffic class spec '" + s.name + "'");
    }
    cursors_.push_back(ClassCursor{
        &s, 0,
        HoldTimeSampler(mix_seed(seed, static_cast<std::uint64_t>(s.index)), mean_hold_hours)});
  }
}

Request ArrivalStream::next() {
  if (done()) throw std::out_of_range("arrival stream exhausted");
  ClassCursor* best = &cursors_.front();
  for (ClassCursor& c : cursors_) {
    const double t = c.next_time();
    const double bt = best->next_time();
    if (t < bt || (t == bt && c.spec->index > best->spec->index)) best = &c;
  }
  Request r{emitted_, best->spec->index, best->next_time(), best->hold.next()};
  ++best->k;
  ++emitted_;
  return r;
}

std::vector<Request> generate_arrivals(std::span<const TrafficClassSpec> specs,
                                       std::uint64_t total_requests, std::uint64_t seed,
                                       double mean_hold_hours) {
  ArrivalStream stream(specs, total_requests, seed, mean_hold_hours);
  std::vector<Request> out;
  out.reserve(total_requests);
  while (!stream.done()) out.push_back(stream.next());
  return out;
}

double last_arrival_time(std::span<const TrafficClassSpec> specs, std::uint64_t total_requests) {
  // Same merge as ArrivalStream without drawing hold times.
  std::vector<std::uint64_t> k(specs.size(), 0);
  double last = 0.0;
  for (std::uint64_t n = 0; n < total_requests; ++n) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < specs.size(); ++c) {
      const double t = specs[c].start_delay_h + static_cast<double>(k[c]) * specs[c].inter_arrival_h;
      const double bt =
          specs[best].start_delay_h + static_cast<double>(k[best]) * specs[best].inter_arrival_h;
      if (t < bt || (t == bt && specs[c].index > specs[best].index)) best = c;
    }
    last = specs[best].start_delay_h + static_cast<double>(k[best]) * specs[best].inter_arrival_h;
    ++k[best];
  }
  return last;
}

std::array<TrafficClassSpec, 3> scenario_presets(int id) {
  struct Timing {
    double inter_arrival;
    double delay;
  };
  // (T_c, D_c) for Bronze, Silver, Gold.
  static constexpr Timing kTimings[4][3] = {
      {{40, 5000}, {20, 3000}, {10, 0}},
      {{40, 0}, {20, 3000}, {10, 5000}},
      {{10, 5000}, {20, 3000}, {40, 0}},
      {{10, 0}, {20, 3000}, {40, 5000}},
  };
  if (id < 1 || id > 4) throw UnknownScenario("unknown scenario " + std::to_string(id));
  const auto& t = kTimings[id - 1];
  auto path = [](std::initializer_list<int> ns) {
    std::vector<NodeId> out;
    for (int n : ns) out.push_back(NodeId{n});
    return out;
  };
  return {
      TrafficClassSpec{0, "Bronze", 1, t[0].inter_arrival, t[0].delay, path({14, 4, 2}), 20.0},
      TrafficClassSpec{1, "Silver", 2, t[1].inter_arrival, t[1].delay, path({14, 4, 7}), 30.0},
      TrafficClassSpec{2, "Gold", 5, t[2].inter_arrival, t[2].delay, path({14, 4, 5}), 50.0},
  };
}

}  // namespace eonbam
