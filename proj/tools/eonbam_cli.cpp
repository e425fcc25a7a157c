// eonbam: run BAM slot-allocation experiments and write CSV results.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "eonbam/config.hpp"
#include "eonbam/error.hpp"
#include "eonbam/experiment.hpp"
#include "eonbam/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct RunArgs {
  std::string config;
  std::string manifest;
  std::string bam = "";
  std::optional<std::uint64_t> requests;
  std::optional<int> reps;
  std::optional<std::uint64_t> seed;
  std::string out = "results";
  int jobs = 1;
  bool audit = false;
};

eonbam::ScenarioConfig resolve(const RunArgs& args) {
  eonbam::ScenarioConfig cfg;
  if (!args.manifest.empty()) {
    std::ifstream in(args.manifest);
    if (!in) throw eonbam::Error("cannot read manifest " + args.manifest);
    cfg = eonbam::scenario_from_manifest(nlohmann::json::parse(in));
  } else {
    cfg = eonbam::load_config(args.config);
  }
  if (!args.bam.empty() && args.bam != "all") {
    cfg.bams = {*eonbam::parse_bam_kind(args.bam)};
  } else if (args.bam == "all") {
    cfg.bams.assign(std::begin(eonbam::kAllBamKinds), std::end(eonbam::kAllBamKinds));
  }
  if (args.requests) cfg.total_requests = *args.requests;
  if (args.reps) cfg.replications = *args.reps;
  if (args.seed) cfg.seed = *args.seed;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elastic optical network slot allocation under MAM, RDM and ATCS"};
  app.require_subcommand(1);

  RunArgs args;
  CLI::App* run = app.add_subcommand("run", "Run every replication of one scenario");
  auto* config_opt = run->add_option("--config", args.config, "Scenario config file")
                         ->check(CLI::ExistingFile);
  auto* manifest_opt =
      run->add_option("--manifest", args.manifest, "Re-run from a previous manifest.json")
          ->check(CLI::ExistingFile);
  config_opt->excludes(manifest_opt);
  run->add_option("--bam", args.bam, "BAM to simulate")
      ->check(CLI::IsMember({"mam", "rdm", "atcs", "all"}, CLI::ignore_case));
  run->add_option("--requests", args.requests, "Total requests per replication");
  run->add_option("--reps", args.reps, "Replications per BAM")->check(CLI::PositiveNumber);
  run->add_option("--seed", args.seed, "Base seed");
  run->add_option("--out", args.out, "Output directory")->capture_default_str();
  run->add_option("--jobs", args.jobs, "Worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--audit", args.audit, "Check cross-module invariants after every event");

  try {
    app.parse(argc, argv);
    if (args.config.empty() && args.manifest.empty()) {
      throw CLI::RequiredError("--config or --manifest");
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    const eonbam::ScenarioConfig cfg = resolve(args);
    eonbam::ExperimentOptions options;
    options.jobs = args.jobs;
    options.audit = args.audit ? eonbam::AuditLevel::EveryEvent : eonbam::AuditLevel::None;
    const auto result = eonbam::run_experiment(cfg, options);
    eonbam::write_outputs(result, args.out);
    std::cerr << "wrote " << args.out << "/summary.csv, timeseries.csv, manifest.json\n";
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "eonbam: error: " << e.what() << '\n';
    return kExitFailure;
  }
}
