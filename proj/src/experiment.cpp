#include "eonbam/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace eonbam {

const BamResult& ExperimentResult::of(BamKind kind) const {
  for (const BamResult& b : bams) {
    if (b.kind == kind) return b;
  }
  throw std::out_of_range("BAM " + std::string(to_string(kind)) + " was not run");
}

ExperimentResult run_experiment(const ScenarioConfig& scenario, ExperimentOptions options) {
  scenario.validate();
  const int reps = scenario.replications;
  ExperimentResult result{scenario, {}};
  for (BamKind kind : scenario.bams) {
    BamResult b{kind, {}, std::vector<RawMetrics>(reps), {}};
    for (int r = 0; r < reps; ++r) b.seeds.push_back(replication_seed(scenario.seed, r));
    result.bams.push_back(std::move(b));
  }

  const std::size_t tasks = result.bams.size() * static_cast<std::size_t>(reps);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      BamResult& b = result.bams[t / reps];
      const int r = static_cast<int>(t % reps);
      try {
        b.runs[r] = run_replication(scenario, b.kind, r, scenario.seed, options.audit);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const int jobs = std::clamp(options.jobs, 1, static_cast<int>(std::max<std::size_t>(tasks, 1)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  for (BamResult& b : result.bams) b.aggregate = aggregate(b.runs);
  return result;
}

}  // namespace eonbam
