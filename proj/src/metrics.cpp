#include "eonbam/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/math/distributions/students_t.hpp>

#include "eonbam/error.hpp"

namespace eonbam {

UtilizationSeries::UtilizationSeries(double bin_width, double horizon)
    : bin_width_(bin_width), horizon_(horizon) {
  if (!(bin_width > 0)) throw std::invalid_argument("bin width must be positive");
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  const auto bins = static_cast<std::size_t>(std::ceil(horizon / bin_width));
  bin_used_.assign(bins, 0.0);
  bin_available_.assign(bins, 0.0);
}

void UtilizationSeries::record_interval(double t0, double t1, double used_slots,
                                        double capacity) {
  if (t1 < t0) {
    throw NegativeInterval("interval [" + std::to_string(t0) + ", " + std::to_string(t1) +
                           ") runs backwards");
  }
  const double dt = t1 - t0;
  if (dt == 0) return;
  used_ += used_slots * dt;
  available_ += capacity * dt;

  if (bin_used_.empty()) return;
  const double lo = std::max(t0, 0.0);
  const double hi = std::min(t1, horizon_);
  if (hi <= lo) return;
  for (std::size_t i = bin_index(lo); i < bin_used_.size(); ++i) {
    const double b0 = std::max(lo, bin_start(i));
    const double b1 = std::min(hi, std::min(bin_start(i + 1), horizon_));
    if (b1 <= b0) {
      if (bin_start(i) >= hi) break;
      continue;
    }
    bin_used_[i] += used_slots * (b1 - b0);
    bin_available_[i] += capacity * (b1 - b0);
  }
}

double UtilizationSeries::mean_utilization() const {
  return available_ > 0 ? used_ / available_ : 0.0;
}

double UtilizationSeries::bin_utilization(std::size_t i) const {
  return bin_available_.at(i) > 0 ? bin_used_[i] / bin_available_[i] : 0.0;
}

std::size_t UtilizationSeries::bin_index(double t) const {
  if (t <= 0) return 0;
  const auto i = static_cast<std::size_t>(t / bin_width_);
  return std::min(i, bin_used_.size() - 1);
}

RawMetrics::RawMetrics(int class_count, std::size_t link_count, double bin_width,
                       double horizon)
    : arrivals(class_count, 0),
      blocked_bam(class_count, 0),
      blocked_spectrum(class_count, 0),
      established(class_count, 0),
      link_utilization(link_count, UtilizationSeries(bin_width, horizon)),
      network_utilization(bin_width, horizon),
      blocked_per_bin(network_utilization.bin_count(), 0),
      established_per_bin(network_utilization.bin_count(), 0) {}

namespace {

std::uint64_t sum(const std::vector<std::uint64_t>& v) {
  return std::accumulate(v.begin(), v.end(), std::uint64_t{0});
}

}  // namespace

std::uint64_t RawMetrics::total_arrivals() const { return sum(arrivals); }
std::uint64_t RawMetrics::total_blocked() const {
  return total_blocked_bam() + total_blocked_spectrum();
}
std::uint64_t RawMetrics::total_blocked_bam() const { return sum(blocked_bam); }
std::uint64_t RawMetrics::total_blocked_spectrum() const { return sum(blocked_spectrum); }
std::uint64_t RawMetrics::total_established() const { return sum(established); }

namespace {

// Shifted by the first value so that identical inputs reproduce it exactly.
double stable_mean(std::span<const double> values) {
  const double base = values.front();
  double shift = 0.0;
  for (double v : values) shift += v - base;
  return base + shift / static_cast<double>(values.size());
}

}  // namespace

Stat summarize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("summarize needs at least one value");
  const double n = static_cast<double>(values.size());
  Stat s;
  s.mean = stable_mean(values);
  if (values.size() < 2) return s;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / (n - 1));
  const boost::math::students_t dist(n - 1);
  s.ci95 = boost::math::quantile(dist, 0.975) * s.stddev / std::sqrt(n);
  return s;
}

namespace {

template <typename F>
Stat stat_of(std::span<const RawMetrics> runs, F&& f) {
  std::vector<double> v;
  v.reserve(runs.size());
  for (const RawMetrics& r : runs) v.push_back(static_cast<double>(f(r)));
  return summarize(v);
}

bool same_grid(const UtilizationSeries& a, const UtilizationSeries& b) {
  return a.bin_width() == b.bin_width() && a.horizon() == b.horizon() &&
         a.bin_count() == b.bin_count();
}

}  // namespace

AggregatedMetrics aggregate(std::span<const RawMetrics> runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate needs at least one replication");
  const RawMetrics& first = runs.front();
  for (const RawMetrics& r : runs) {
    if (r.class_count() != first.class_count() ||
        r.link_utilization.size() != first.link_utilization.size() ||
        !same_grid(r.network_utilization, first.network_utilization)) {
      throw GridMismatch("replications do not share classes, links and sample grid");
    }
    for (std::size_t l = 0; l < r.link_utilization.size(); ++l) {
      if (!same_grid(r.link_utilization[l], first.network_utilization)) {
        throw GridMismatch("link series grid differs from network series grid");
      }
    }
  }

  AggregatedMetrics agg;
  agg.replications = static_cast<int>(runs.size());
  for (int c = 0; c < first.class_count(); ++c) {
    agg.per_class.push_back(OutcomeStats{
        stat_of(runs, [c](const RawMetrics& r) { return r.blocked(c); }),
        stat_of(runs, [c](const RawMetrics& r) { return r.blocked_bam[c]; }),
        stat_of(runs, [c](const RawMetrics& r) { return r.blocked_spectrum[c]; }),
        stat_of(runs, [c](const RawMetrics& r) { return r.established[c]; }),
    });
  }
  agg.total = OutcomeStats{
      stat_of(runs, [](const RawMetrics& r) { return r.total_blocked(); }),
      stat_of(runs, [](const RawMetrics& r) { return r.total_blocked_bam(); }),
      stat_of(runs, [](const RawMetrics& r) { return r.total_blocked_spectrum(); }),
      stat_of(runs, [](const RawMetrics& r) { return r.total_established(); }),
  };
  for (std::size_t l = 0; l < first.link_utilization.size(); ++l) {
    agg.link_mean_utilization.push_back(stat_of(
        runs, [l](const RawMetrics& r) { return r.link_utilization[l].mean_utilization(); }));
  }
  agg.network_mean_utilization = stat_of(
      runs, [](const RawMetrics& r) { return r.network_utilization.mean_utilization(); });

  const std::size_t bins = first.network_utilization.bin_count();
  std::vector<double> column(runs.size());
  auto mean_over_runs = [&](auto&& value_of) {
    for (std::size_t k = 0; k < runs.size(); ++k) column[k] = value_of(k);
    return stable_mean(column);
  };
  agg.bin_start.resize(bins);
  agg.link_utilization.assign(first.link_utilization.size(), std::vector<double>(bins, 0.0));
  agg.network_utilization.assign(bins, 0.0);
  agg.cum_blocked_total.assign(bins, 0.0);
  agg.cum_established_total.assign(bins, 0.0);

  std::vector<std::uint64_t> cum_blocked(runs.size(), 0);
  std::vector<std::uint64_t> cum_established(runs.size(), 0);
  for (std::size_t i = 0; i < bins; ++i) {
    agg.bin_start[i] = first.network_utilization.bin_start(i);
    for (std::size_t l = 0; l < first.link_utilization.size(); ++l) {
      agg.link_utilization[l][i] = mean_over_runs(
          [&](std::size_t k) { return runs[k].link_utilization[l].bin_utilization(i); });
    }
    agg.network_utilization[i] = mean_over_runs(
        [&](std::size_t k) { return runs[k].network_utilization.bin_utilization(i); });
    for (std::size_t k = 0; k < runs.size(); ++k) {
      cum_blocked[k] += runs[k].blocked_per_bin[i];
      cum_established[k] += runs[k].established_per_bin[i];
    }
    agg.cum_blocked_total[i] =
        mean_over_runs([&](std::size_t k) { return static_cast<double>(cum_blocked[k]); });
    agg.cum_established_total[i] =
        mean_over_runs([&](std::size_t k) { return static_cast<double>(cum_established[k]); });
  }
  return agg;
}

}  // namespace eonbam
