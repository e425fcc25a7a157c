#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "eonbam/experiment.hpp"

namespace eonbam {

/// Header of summary.csv for a given headline link column suffix
/// (e.g. "link_14_4").
std::string summary_header(const std::string& link_column);
std::string timeseries_header(const std::string& link_column);

/// Column suffix naming the headline link, "link_<from>_<to>".
std::string headline_column(const ScenarioConfig& scenario);

/// One row per (BAM, replication, class|total), then one "agg" row per
/// (BAM, class|total) holding mean with stddev and ci95 in the adjacent columns.
std::string summary_csv(std::span<const ExperimentResult> results);

/// Replication-mean series: one row per (BAM, bin).
std::string timeseries_csv(std::span<const ExperimentResult> results);

/// Resolved config plus every replication seed.
nlohmann::json manifest(const ExperimentResult& result);
/// Recovers the config recorded by manifest(). Throws ValidationError.
ScenarioConfig scenario_from_manifest(const nlohmann::json& manifest);

nlohmann::json to_json(const ScenarioConfig& scenario);
ScenarioConfig scenario_from_json(const nlohmann::json& j);

/// Writes summary.csv, timeseries.csv and manifest.json into `dir`.
void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

}  // namespace eonbam
