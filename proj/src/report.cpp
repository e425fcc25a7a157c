#include "eonbam/report.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "eonbam/error.hpp"
#include "eonbam/format.hpp"

namespace eonbam {

std::string format_number(double value) {
  if (value == 0) return "0";  // folds -0
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

namespace {

constexpr const char* kMetricColumns[] = {"blocked", "blocked_bam", "blocked_spectrum",
                                          "established"};

std::string with_variants(const std::string& column) {
  return column + "," + column + "_stddev," + column + "_ci95";
}

std::string stat_cells(const Stat& s) {
  return format_number(s.mean) + "," + format_number(s.stddev) + "," + format_number(s.ci95);
}

std::string plain_cell(double value) { return format_number(value) + ",,"; }

void write_file(const std::filesystem::path& file, const std::string& body) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + file.string());
  out << body;
  if (!out) throw Error("failed writing " + file.string());
}

}  // namespace

std::string headline_column(const ScenarioConfig& s) {
  return "link_" + std::to_string(s.headline_from.value) + "_" +
         std::to_string(s.headline_to.value);
}

std::string summary_header(const std::string& link_column) {
  std::string h = "scenario,bam,replication,class";
  for (const char* m : kMetricColumns) h += "," + with_variants(m);
  h += "," + with_variants("mean_utilization_" + link_column);
  h += "," + with_variants("mean_utilization_network");
  return h;
}

std::string timeseries_header(const std::string& link_column) {
  return "scenario,bam,t_hours,utilization_" + link_column +
         ",utilization_network,cum_blocked_total,cum_established_total";
}

std::string summary_csv(std::span<const ExperimentResult> results) {
  if (results.empty()) throw std::invalid_argument("no results to summarize");
  std::ostringstream out;
  out << summary_header(headline_column(results.front().scenario)) << '\n';
  for (const ExperimentResult& res : results) {
    const ScenarioConfig& sc = res.scenario;
    const LinkId headline = sc.headline_link();
    const int C = static_cast<int>(sc.classes.size());
    for (const BamResult& b : res.bams) {
      const std::string prefix = std::to_string(sc.id) + "," + std::string(to_string(b.kind)) + ",";
      for (std::size_t r = 0; r < b.runs.size(); ++r) {
        const RawMetrics& m = b.runs[r];
        const std::string util =
            plain_cell(m.link_utilization[headline].mean_utilization()) + "," +
            plain_cell(m.network_utilization.mean_utilization());
        for (int c = 0; c <= C; ++c) {
          const bool total = c == C;
          out << prefix << r << ',' << (total ? "total" : std::to_string(c)) << ','
              << plain_cell(static_cast<double>(total ? m.total_blocked() : m.blocked(c))) << ','
              << plain_cell(static_cast<double>(total ? m.total_blocked_bam() : m.blocked_bam[c]))
              << ','
              << plain_cell(static_cast<double>(total ? m.total_blocked_spectrum()
                                                      : m.blocked_spectrum[c]))
              << ','
              << plain_cell(static_cast<double>(total ? m.total_established() : m.established[c]))
              << ',' << util << '\n';
        }
      }
      const AggregatedMetrics& a = b.aggregate;
      const std::string util = stat_cells(a.link_mean_utilization[headline]) + "," +
                               stat_cells(a.network_mean_utilization);
      for (int c = 0; c <= C; ++c) {
        const bool total = c == C;
        const OutcomeStats& o = total ? a.total : a.per_class[c];
        out << prefix << "agg," << (total ? "total" : std::to_string(c)) << ','
            << stat_cells(o.blocked) << ',' << stat_cells(o.blocked_bam) << ','
            << stat_cells(o.blocked_spectrum) << ',' << stat_cells(o.established) << ',' << util
            << '\n';
      }
    }
  }
  return out.str();
}

std::string timeseries_csv(std::span<const ExperimentResult> results) {
  if (results.empty()) throw std::invalid_argument("no results to summarize");
  std::ostringstream out;
  out << timeseries_header(headline_column(results.front().scenario)) << '\n';
  for (const ExperimentResult& res : results) {
    const LinkId headline = res.scenario.headline_link();
    for (const BamResult& b : res.bams) {
      const AggregatedMetrics& a = b.aggregate;
      for (std::size_t i = 0; i < a.bin_start.size(); ++i) {
        out << res.scenario.id << ',' << to_string(b.kind) << ',' << format_number(a.bin_start[i])
            << ',' << format_number(a.link_utilization[headline][i]) << ','
            << format_number(a.network_utilization[i]) << ','
            << format_number(a.cum_blocked_total[i]) << ','
            << format_number(a.cum_established_total[i]) << '\n';
      }
    }
  }
  return out.str();
}

nlohmann::json to_json(const ScenarioConfig& s) {
  using nlohmann::json;
  json nodes = json::array();
  for (NodeId n : s.topology.nodes()) nodes.push_back(n.value);
  json links = json::array();
  for (const Link& l : s.topology.links()) links.push_back({l.from.value, l.to.value});
  json classes = json::array();
  for (const TrafficClassSpec& c : s.classes) {
    json path = json::array();
    for (NodeId n : c.path) path.push_back(n.value);
    classes.push_back({{"index", c.index},
                       {"name", c.name},
                       {"demand_slots", c.demand_slots},
                       {"inter_arrival_h", c.inter_arrival_h},
                       {"start_delay_h", c.start_delay_h},
                       {"path", path},
                       {"nominal_share_pct", c.nominal_share_pct}});
  }
  json bams = json::array();
  for (BamKind k : s.bams) bams.push_back(std::string(to_string(k)));
  return {{"id", s.id},
          {"name", s.name},
          {"requests", s.total_requests},
          {"replications", s.replications},
          {"seed", s.seed},
          {"mean_hold_h", s.mean_hold_h},
          {"bin_width_h", s.bin_width_h},
          {"bams", bams},
          {"topology",
           {{"capacity_slots", s.capacity_slots},
            {"nodes", nodes},
            {"links", links},
            {"headline_link", {s.headline_from.value, s.headline_to.value}}}},
          {"classes", classes}};
}

ScenarioConfig scenario_from_json(const nlohmann::json& j) {
  try {
    ScenarioConfig s;
    s.id = j.at("id").get<int>();
    s.name = j.at("name").get<std::string>();
    s.total_requests = j.at("requests").get<std::uint64_t>();
    s.replications = j.at("replications").get<int>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.mean_hold_h = j.at("mean_hold_h").get<double>();
    s.bin_width_h = j.at("bin_width_h").get<double>();
    s.bams.clear();
    for (const auto& k : j.at("bams")) {
      auto kind = parse_bam_kind(k.get<std::string>());
      if (!kind) throw ValidationError("unknown BAM " + k.get<std::string>());
      s.bams.push_back(*kind);
    }
    const auto& t = j.at("topology");
    s.capacity_slots = t.at("capacity_slots").get<int>();
    Topology topo;
    for (const auto& n : t.at("nodes")) topo.add_node(NodeId{n.get<int>()});
    for (const auto& l : t.at("links")) {
      topo.add_link(NodeId{l.at(0).get<int>()}, NodeId{l.at(1).get<int>()}, s.capacity_slots);
    }
    s.topology = std::move(topo);
    s.headline_from = NodeId{t.at("headline_link").at(0).get<int>()};
    s.headline_to = NodeId{t.at("headline_link").at(1).get<int>()};
    s.classes.clear();
    for (const auto& c : j.at("classes")) {
      TrafficClassSpec spec;
      spec.index = c.at("index").get<int>();
      spec.name = c.at("name").get<std::string>();
      spec.demand_slots = c.at("demand_slots").get<int>();
      spec.inter_arrival_h = c.at("inter_arrival_h").get<double>();
      spec.start_delay_h = c.at("start_delay_h").get<double>();
      for (const auto& n : c.at("path")) spec.path.push_back(NodeId{n.get<int>()});
      spec.nominal_share_pct = c.at("nominal_share_pct").get<double>();
      s.classes.push_back(std::move(spec));
    }
    s.validate();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed manifest: ") + e.what());
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError(std::string("malformed manifest: ") + e.what());
  }
}

nlohmann::json manifest(const ExperimentResult& result) {
  nlohmann::json seeds = nlohmann::json::object();
  for (const BamResult& b : result.bams) seeds[std::string(to_string(b.kind))] = b.seeds;
  return {{"format", "eonbam-manifest"},
          {"version", 1},
          {"config", to_json(result.scenario)},
          {"replication_seeds", seeds},
          {"outputs", {"summary.csv", "timeseries.csv"}}};
}

ScenarioConfig scenario_from_manifest(const nlohmann::json& m) {
  if (!m.is_object() || m.value("format", "") != "eonbam-manifest") {
    throw ValidationError("not an eonbam manifest");
  }
  ScenarioConfig cfg = scenario_from_json(m.at("config"));
  // Seeds are derived from the config; a mismatch means the manifest was edited
  // or written by an incompatible build.
  if (m.contains("replication_seeds")) {
    for (const auto& [bam, seeds] : m.at("replication_seeds").items()) {
      const auto recorded = seeds.get<std::vector<std::uint64_t>>();
      if (recorded.size() != static_cast<std::size_t>(cfg.replications)) {
        throw ValidationError("manifest lists " + std::to_string(recorded.size()) + " seeds for " +
                              bam + ", config has " + std::to_string(cfg.replications));
      }
      for (int r = 0; r < cfg.replications; ++r) {
        if (recorded[r] != replication_seed(cfg.seed, r)) {
          throw ValidationError("manifest seed for " + bam + " replication " +
                                std::to_string(r) + " does not match the config seed");
        }
      }
    }
  }
  return cfg;
}

void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::span<const ExperimentResult> one(&result, 1);
  write_file(dir / "summary.csv", summary_csv(one));
  write_file(dir / "timeseries.csv", timeseries_csv(one));
  write_file(dir / "manifest.json", manifest(result).dump(2) + "\n");
}

}  // namespace eonbam
