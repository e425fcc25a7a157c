#include "eonbam/topology.hpp"

#include <algorithm>
#include <string>

#include "eonbam/error.hpp"

namespace eonbam {

namespace {

std::string node_name(NodeId n) { return std::to_string(n.value); }

}  // namespace

void Topology::add_node(NodeId node) {
  if (has_node(node)) {
    throw ValidationError("duplicate node " + node_name(node));
  }
  nodes_.push_back(node);
}

LinkId Topology::add_link(NodeId from, NodeId to, int capacity) {
  for (NodeId n : {from, to}) {
    if (!has_node(n)) throw UnknownNode("unknown node " + node_name(n));
  }
  if (capacity <= 0) {
    throw ValidationError("link " + node_name(from) + "->" + node_name(to) +
                          " must have positive capacity");
  }
  if (find_link(from, to)) {
    throw DuplicateLink("duplicate link " + node_name(from) + "->" + node_name(to));
  }
  const LinkId id = links_.size();
  links_.push_back(Link{id, from, to, capacity});
  return id;
}

bool Topology::has_node(NodeId node) const {
  return std::find(nodes_.begin(), nodes_.end(), node) != nodes_.end();
}

std::optional<LinkId> Topology::find_link(NodeId from, NodeId to) const {
  for (const Link& l : links_) {
    if (l.from == from && l.to == to) return l.id;
  }
  return std::nullopt;
}

long long Topology::total_capacity() const {
  long long total = 0;
  for (const Link& l : links_) total += l.capacity;
  return total;
}

Path resolve_path(const Topology& topology, std::span<const NodeId> nodes) {
  if (nodes.size() < 2) {
    throw ValidationError("a path needs at least two nodes");
  }
  for (NodeId n : nodes) {
    if (!topology.has_node(n)) throw UnknownNode("unknown node " + node_name(n));
  }
  Path path;
  path.nodes.assign(nodes.begin(), nodes.end());
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    auto link = topology.find_link(nodes[i], nodes[i + 1]);
    if (!link) {
      throw NoSuchLink("no link " + node_name(nodes[i]) + "->" + node_name(nodes[i + 1]));
    }
    if (std::find(path.links.begin(), path.links.end(), *link) != path.links.end()) {
      throw ValidationError("path repeats link " + node_name(nodes[i]) + "->" +
                            node_name(nodes[i + 1]));
    }
    path.links.push_back(*link);
  }
  return path;
}

Path resolve_path(const Topology& topology, std::initializer_list<int> nodes) {
  std::vector<NodeId> ids;
  for (int n : nodes) ids.push_back(NodeId{n});
  return resolve_path(topology, ids);
}

Topology build_paper_topology(int capacity) {
  Topology t;
  for (int n : {14, 4, 2, 7, 5}) t.add_node(NodeId{n});
  t.add_link(NodeId{14}, NodeId{4}, capacity);
  t.add_link(NodeId{4}, NodeId{2}, capacity);
  t.add_link(NodeId{4}, NodeId{7}, capacity);
  t.add_link(NodeId{4}, NodeId{5}, capacity);
  return t;
}

}  // namespace eonbam
