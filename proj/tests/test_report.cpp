#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "eonbam/error.hpp"
#include "eonbam/format.hpp"
#include "eonbam/report.hpp"

using namespace eonbam;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> cells(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentResult small_run(std::uint64_t requests, int reps) {
  ScenarioConfig sc = paper_scenario(1);
  sc.total_requests = requests;
  sc.replications = reps;
  return run_experiment(sc);
}

}  // namespace

TEST_CASE("summary header keeps the documented column order") {
  CHECK(summary_header("link_14_4") ==
        "scenario,bam,replication,class,"
        "blocked,blocked_stddev,blocked_ci95,"
        "blocked_bam,blocked_bam_stddev,blocked_bam_ci95,"
        "blocked_spectrum,blocked_spectrum_stddev,blocked_spectrum_ci95,"
        "established,established_stddev,established_ci95,"
        "mean_utilization_link_14_4,mean_utilization_link_14_4_stddev,"
        "mean_utilization_link_14_4_ci95,"
        "mean_utilization_network,mean_utilization_network_stddev,mean_utilization_network_ci95");
  CHECK(timeseries_header("link_14_4") ==
        "scenario,bam,t_hours,utilization_link_14_4,utilization_network,cum_blocked_total,"
        "cum_established_total");
}

TEST_CASE("summary.csv has one row per BAM x (replications + agg) x (classes + total)") {
  const ExperimentResult r = small_run(2000, 3);
  const auto rows = lines(summary_csv(std::span(&r, 1)));
  REQUIRE(rows.size() == 1 + 3 * (3 + 1) * 4);
  const std::size_t width = cells(rows[0]).size();
  int agg = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto c = cells(rows[i]);
    REQUIRE(c.size() == width);
    CHECK(c[0] == "1");
    if (c[2] == "agg") {
      ++agg;
      CHECK_FALSE(c[5].empty());
    } else {
      CHECK(c[5].empty());  // blocked_stddev only on agg rows
    }
  }
  CHECK(agg == 3 * 4);
  // Group labels in BAM order.
  CHECK(cells(rows[1])[1] == "MAM");
  CHECK(cells(rows.back())[1] == "ATCS");
}

TEST_CASE("summary rows are internally consistent") {
  const ExperimentResult r = small_run(3000, 2);
  for (const auto& row : lines(summary_csv(std::span(&r, 1)))) {
    const auto c = cells(row);
    if (c[0] == "scenario" || c[2] == "agg") continue;
    const double blocked = std::stod(c[4]);
    CHECK(blocked == std::stod(c[7]) + std::stod(c[10]));
    const double util = std::stod(c[16]);
    CHECK(util >= 0);
    CHECK(util <= 1);
  }
}

TEST_CASE("zero requests give all-zero counts") {
  const ExperimentResult r = small_run(0, 2);
  const auto rows = lines(summary_csv(std::span(&r, 1)));
  REQUIRE(rows.size() == 1 + 3 * 3 * 4);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto c = cells(rows[i]);
    for (int col : {4, 7, 10, 13, 16, 19}) CHECK(c[col] == "0");
  }
  CHECK(lines(timeseries_csv(std::span(&r, 1))).size() == 1);
}

TEST_CASE("timeseries.csv covers every bin for every BAM") {
  const ExperimentResult r = small_run(2000, 2);
  const auto rows = lines(timeseries_csv(std::span(&r, 1)));
  const std::size_t bins = r.bams.front().aggregate.bin_start.size();
  REQUIRE(rows.size() == 1 + 3 * bins);
  const auto last = cells(rows.back());
  CHECK(last[1] == "ATCS");
  CHECK(std::stod(last[6]) == doctest::Approx(r.of(BamKind::ATCS).aggregate.total.established.mean));
}

TEST_CASE("numbers print in shortest round-trip form") {
  CHECK(format_number(0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(12) == "12");
  CHECK(format_number(0.1) == "0.1");
  CHECK(std::stod(format_number(1.0 / 3)) == 1.0 / 3);
}

TEST_CASE("manifest reproduces the run byte for byte") {
  const ExperimentResult r = small_run(1500, 2);
  const auto m = manifest(r);
  CHECK(m.at("replication_seeds").at("RDM").size() == 2);
  const ScenarioConfig back = scenario_from_manifest(nlohmann::json::parse(m.dump()));
  CHECK(back == r.scenario);

  const auto dir = std::filesystem::temp_directory_path() / "eonbam_report_test";
  std::filesystem::remove_all(dir);
  write_outputs(r, dir / "a");
  write_outputs(run_experiment(back), dir / "b");
  for (const char* f : {"summary.csv", "timeseries.csv", "manifest.json"}) {
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("malformed manifests are rejected") {
  CHECK_THROWS_AS(scenario_from_manifest(nlohmann::json::object()), ValidationError);
  auto m = manifest(small_run(10, 1));
  m["config"].erase("classes");
  CHECK_THROWS_AS(scenario_from_manifest(m), ValidationError);

  auto tampered = manifest(small_run(10, 2));
  tampered["replication_seeds"]["RDM"][1] = 12345;
  CHECK_THROWS_AS(scenario_from_manifest(tampered), ValidationError);
}
