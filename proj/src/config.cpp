#include "eonbam/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "eonbam/error.hpp"
#include "eonbam/format.hpp"

namespace eonbam {

namespace {

struct Entry {
  std::string value;
  int line;
};

struct Section {
  std::string name;
  int line;
  std::multimap<std::string, Entry> entries;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

template <typename T>
T parse_number(const std::string& text, int line, const std::string& field) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, field, "'" + text + "' is not a valid number");
  }
  return value;
}

class SectionReader {
 public:
  SectionReader(const Section& section, std::vector<std::string> allowed)
      : section_(section) {
    for (const auto& [key, entry] : section.entries) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw ParseError(entry.line, key, "unknown field in [" + section.name + "]");
      }
    }
  }

  std::optional<Entry> optional(const std::string& key, bool repeatable = false) const {
    const auto count = section_.entries.count(key);
    if (count == 0) return std::nullopt;
    auto it = section_.entries.find(key);
    if (count > 1 && !repeatable) {
      throw ParseError(std::next(it)->second.line, key, "field given more than once");
    }
    return it->second;
  }

  Entry required(const std::string& key) const {
    auto e = optional(key);
    if (!e) throw ParseError(section_.line, key, "missing in [" + section_.name + "]");
    return *e;
  }

  std::vector<Entry> all(const std::string& key) const {
    std::vector<Entry> out;
    auto [lo, hi] = section_.entries.equal_range(key);
    for (auto it = lo; it != hi; ++it) out.push_back(it->second);
    return out;
  }

  template <typename T>
  T number(const std::string& key) const {
    const Entry e = required(key);
    return parse_number<T>(e.value, e.line, key);
  }

  template <typename T>
  void number_into(const std::string& key, T& target) const {
    if (auto e = optional(key)) target = parse_number<T>(e->value, e->line, key);
  }

 private:
  const Section& section_;
};

std::vector<NodeId> node_list(const Entry& e, const std::string& field) {
  std::vector<NodeId> out;
  for (const std::string& w : words(e.value)) out.push_back(NodeId{parse_number<int>(w, e.line, field)});
  return out;
}

std::vector<Section> split_sections(std::string_view text) {
  std::vector<Section> sections;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "", "unterminated section header");
      const auto name = words(line.substr(1, line.size() - 2));
      std::string joined;
      for (const auto& w : name) joined += (joined.empty() ? "" : " ") + w;
      if (joined.empty()) throw ParseError(line_no, "", "empty section name");
      sections.push_back(Section{joined, line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, std::string(line), "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError(line_no, "", "missing key before '='");
    if (sections.empty()) throw ParseError(line_no, key, "field outside of any section");
    sections.back().entries.emplace(key, Entry{value, line_no});
  }
  return sections;
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  cfg.classes.clear();
  bool have_scenario = false;
  bool have_topology = false;
  std::map<int, TrafficClassSpec> classes;

  for (const Section& sec : split_sections(text)) {
    if (sec.name == "scenario") {
      if (have_scenario) throw ParseError(sec.line, "scenario", "section repeated");
      have_scenario = true;
      SectionReader r(sec, {"id", "name", "requests", "replications", "seed", "mean_hold_h",
                            "bin_width_h", "bams"});
      cfg.id = r.number<int>("id");
      if (auto e = r.optional("name")) cfg.name = e->value;
      r.number_into("requests", cfg.total_requests);
      r.number_into("replications", cfg.replications);
      r.number_into("seed", cfg.seed);
      r.number_into("mean_hold_h", cfg.mean_hold_h);
      r.number_into("bin_width_h", cfg.bin_width_h);
      if (auto e = r.optional("bams")) {
        cfg.bams.clear();
        for (const std::string& w : words(e->value)) {
          auto kind = parse_bam_kind(w);
          if (!kind) throw ParseError(e->line, "bams", "unknown BAM '" + w + "'");
          cfg.bams.push_back(*kind);
        }
      }
    } else if (sec.name == "topology") {
      if (have_topology) throw ParseError(sec.line, "topology", "section repeated");
      have_topology = true;
      SectionReader r(sec, {"capacity_slots", "nodes", "link", "headline_link"});
      cfg.capacity_slots = r.number<int>("capacity_slots");
      Topology topo;
      const Entry nodes = r.required("nodes");
      for (NodeId n : node_list(nodes, "nodes")) {
        try {
          topo.add_node(n);
        } catch (const Error& e) {
          throw ParseError(nodes.line, "nodes", e.what());
        }
      }
      for (const Entry& e : r.all("link")) {
        const auto ends = node_list(e, "link");
        if (ends.size() != 2) throw ParseError(e.line, "link", "expected 'link = <from> <to>'");
        try {
          topo.add_link(ends[0], ends[1], cfg.capacity_slots);
        } catch (const Error& err) {
          throw ParseError(e.line, "link", err.what());
        }
      }
      cfg.topology = std::move(topo);
      if (auto e = r.optional("headline_link")) {
        const auto ends = node_list(*e, "headline_link");
        if (ends.size() != 2) {
          throw ParseError(e->line, "headline_link", "expected '<from> <to>'");
        }
        cfg.headline_from = ends[0];
        cfg.headline_to = ends[1];
      } else if (!cfg.topology.links().empty()) {
        cfg.headline_from = cfg.topology.links().front().from;
        cfg.headline_to = cfg.topology.links().front().to;
      }
    } else if (sec.name.rfind("class ", 0) == 0) {
      const int index = parse_number<int>(sec.name.substr(6), sec.line, "class");
      if (classes.count(index)) throw ParseError(sec.line, "class", "class defined twice");
      SectionReader r(sec, {"name", "demand_slots", "inter_arrival_h", "start_delay_h", "path",
                            "nominal_share_pct"});
      TrafficClassSpec spec;
      spec.index = index;
      spec.name = r.required("name").value;
      spec.demand_slots = r.number<int>("demand_slots");
      spec.inter_arrival_h = r.number<double>("inter_arrival_h");
      r.number_into("start_delay_h", spec.start_delay_h);
      spec.path = node_list(r.required("path"), "path");
      spec.nominal_share_pct = r.number<double>("nominal_share_pct");
      classes.emplace(index, std::move(spec));
    } else {
      throw ParseError(sec.line, sec.name, "unknown section");
    }
  }

  if (!have_scenario) throw ParseError(0, "scenario", "missing [scenario] section");
  if (!have_topology) throw ParseError(0, "topology", "missing [topology] section");
  int expected = 0;
  for (auto& [index, spec] : classes) {
    if (index != expected++) {
      throw ValidationError("class indices must be 0.." + std::to_string(classes.size() - 1));
    }
    cfg.classes.push_back(std::move(spec));
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot read config file " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const ScenarioConfig& c) {
  auto nodes = [](const std::vector<NodeId>& ns) {
    std::string out;
    for (NodeId n : ns) out += (out.empty() ? "" : " ") + std::to_string(n.value);
    return out;
  };
  std::ostringstream out;
  out << "[scenario]\n"
      << "id = " << c.id << '\n';
  if (!c.name.empty()) out << "name = " << c.name << '\n';
  out << "requests = " << c.total_requests << '\n'
      << "replications = " << c.replications << '\n'
      << "seed = " << c.seed << '\n'
      << "mean_hold_h = " << format_number(c.mean_hold_h) << '\n'
      << "bin_width_h = " << format_number(c.bin_width_h) << '\n'
      << "bams =";
  for (BamKind k : c.bams) out << ' ' << to_string(k);
  out << "\n\n[topology]\n"
      << "capacity_slots = " << c.capacity_slots << '\n'
      << "nodes = " << nodes(c.topology.nodes()) << '\n';
  for (const Link& l : c.topology.links()) {
    out << "link = " << l.from.value << ' ' << l.to.value << '\n';
  }
  out << "headline_link = " << c.headline_from.value << ' ' << c.headline_to.value << '\n';
  for (const TrafficClassSpec& s : c.classes) {
    out << "\n[class " << s.index << "]\n"
        << "name = " << s.name << '\n'
        << "demand_slots = " << s.demand_slots << '\n'
        << "inter_arrival_h = " << format_number(s.inter_arrival_h) << '\n'
        << "start_delay_h = " << format_number(s.start_delay_h) << '\n'
        << "path = " << nodes(s.path) << '\n'
        << "nominal_share_pct = " << format_number(s.nominal_share_pct) << '\n';
  }
  return out.str();
}

}  // namespace eonbam
