#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace eonbam {

/// Time-weighted slot occupancy. Keeps the whole-run integral plus a fixed
/// grid of bins [i*w, min((i+1)*w, horizon)) for the utilization curve.
class UtilizationSeries {
 public:
  UtilizationSeries() = default;
  /// bin_width > 0; horizon >= 0. A zero horizon means no bins.
  UtilizationSeries(double bin_width, double horizon);

  /// Accumulates used_slots * (t1 - t0) against capacity * (t1 - t0).
  /// Throws NegativeInterval if t1 < t0.
  void record_interval(double t0, double t1, double used_slots, double capacity);

  /// used slot-hours / available slot-hours so far; 0 before anything is recorded.
  double mean_utilization() const;
  double used_slot_hours() const { return used_; }
  double capacity_slot_hours() const { return available_; }

  double bin_width() const { return bin_width_; }
  double horizon() const { return horizon_; }
  std::size_t bin_count() const { return bin_used_.size(); }
  double bin_start(std::size_t i) const { return static_cast<double>(i) * bin_width_; }
  /// Utilization fraction of bin i (0 for bins with no recorded time).
  double bin_utilization(std::size_t i) const;

  /// Bin that time t falls into, clamped to the last bin. Requires bin_count() > 0.
  std::size_t bin_index(double t) const;

 private:
  double bin_width_ = 0.0;
  double horizon_ = 0.0;
  double used_ = 0.0;
  double available_ = 0.0;
  std::vector<double> bin_used_;
  std::vector<double> bin_available_;
};

/// Everything one replication measures.
struct RawMetrics {
  std::vector<std::uint64_t> arrivals;          // per class
  std::vector<std::uint64_t> blocked_bam;       // per class
  std::vector<std::uint64_t> blocked_spectrum;  // per class
  std::vector<std::uint64_t> established;       // per class

  std::vector<UtilizationSeries> link_utilization;  // indexed by LinkId
  UtilizationSeries network_utilization;            // capacity-weighted over links

  // Per-bin counts of outcomes, aligned with the utilization bins.
  std::vector<std::uint64_t> blocked_per_bin;
  std::vector<std::uint64_t> established_per_bin;

  RawMetrics() = default;
  RawMetrics(int class_count, std::size_t link_count, double bin_width, double horizon);

  int class_count() const { return static_cast<int>(arrivals.size()); }
  std::uint64_t blocked(int c) const { return blocked_bam[c] + blocked_spectrum[c]; }
  std::uint64_t total_arrivals() const;
  std::uint64_t total_blocked() const;
  std::uint64_t total_blocked_bam() const;
  std::uint64_t total_blocked_spectrum() const;
  std::uint64_t total_established() const;
};

/// Mean, sample standard deviation and Student-t 95% confidence half-width.
struct Stat {
  double mean = 0.0;
  double stddev = 0.0;
  double ci95 = 0.0;
};

Stat summarize(std::span<const double> values);

struct OutcomeStats {
  Stat blocked;
  Stat blocked_bam;
  Stat blocked_spectrum;
  Stat established;
};

struct AggregatedMetrics {
  int replications = 0;
  std::vector<OutcomeStats> per_class;
  OutcomeStats total;
  std::vector<Stat> link_mean_utilization;  // indexed by LinkId
  Stat network_mean_utilization;

  // Replication-mean series on the shared bin grid.
  std::vector<double> bin_start;
  std::vector<std::vector<double>> link_utilization;  // [link][bin]
  std::vector<double> network_utilization;
  std::vector<double> cum_blocked_total;
  std::vector<double> cum_established_total;
};

/// Throws GridMismatch when replications disagree on class count, link count
/// or bin grid; std::invalid_argument when `runs` is empty.
AggregatedMetrics aggregate(std::span<const RawMetrics> runs);

}  // namespace eonbam
