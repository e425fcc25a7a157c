#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace eonbam {

struct NodeId {
  int value = 0;
  auto operator<=>(const NodeId&) const = default;
};

using LinkId = std::size_t;

struct Link {
  LinkId id = 0;
  NodeId from;
  NodeId to;
  int capacity = 0;  // slots
  bool operator==(const Link&) const = default;
};

/// A fixed route: links[i] connects nodes[i] -> nodes[i + 1].
struct Path {
  std::vector<NodeId> nodes;
  std::vector<LinkId> links;
  bool operator==(const Path&) const = default;
};

/// Directed graph of nodes and slot-capacity links. Immutable once built.
class Topology {
 public:
  /// Throws ValidationError on a duplicate node.
  void add_node(NodeId node);
  /// Throws UnknownNode, DuplicateLink, or ValidationError (capacity <= 0).
  LinkId add_link(NodeId from, NodeId to, int capacity);

  bool has_node(NodeId node) const;
  std::optional<LinkId> find_link(NodeId from, NodeId to) const;

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }
  const Link& link(LinkId id) const { return links_.at(id); }

  /// Total slot capacity summed over all links.
  long long total_capacity() const;

  bool operator==(const Topology&) const = default;

 private:
  std::vector<NodeId> nodes_;
  std::vector<Link> links_;
};

/// Resolves a node walk into a Path. Throws UnknownNode / NoSuchLink, and
/// ValidationError when the walk has fewer than two nodes or reuses a link.
Path resolve_path(const Topology& topology, std::span<const NodeId> nodes);
Path resolve_path(const Topology& topology, std::initializer_list<int> nodes);

/// The five-node NSFNet fragment rooted at node 14: 14->4, 4->2, 4->7, 4->5.
Topology build_paper_topology(int capacity = 400);

}  // namespace eonbam
