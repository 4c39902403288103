#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace otnplan {

/// Dense node index into PhysicalTopology::labels().
using NodeId = int;

/// Undirected fiber link; normalized so that a < b whenever a != b.
struct Link {
  NodeId a = 0;
  NodeId b = 0;

  Link() = default;
  Link(NodeId x, NodeId y) : a(x < y ? x : y), b(x < y ? y : x) {}

  bool contains(NodeId n) const { return a == n || b == n; }
  NodeId other(NodeId n) const { return n == a ? b : a; }
  friend bool operator==(const Link&, const Link&) = default;
  friend auto operator<=>(const Link&, const Link&) = default;
};

/// Nodes (router + co-located OXC) joined by bidirectional fiber links, each
/// carrying at most `wavelengths` channels.
///
/// The link list is stored as given, duplicates and self-loops included, so
/// that validate_topology() can report them. Every other consumer expects a
/// topology that validated ok.
class PhysicalTopology {
 public:
  PhysicalTopology() = default;
  PhysicalTopology(std::vector<std::string> labels, std::vector<Link> links,
                   int wavelengths = 32);

  int node_count() const { return static_cast<int>(labels_.size()); }
  int link_count() const { return static_cast<int>(links_.size()); }
  int wavelengths() const { return wavelengths_; }
  void set_wavelengths(int w) { wavelengths_ = w; }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(NodeId n) const { return labels_.at(n); }
  const std::vector<Link>& links() const { return links_; }
  const Link& link(int index) const { return links_.at(index); }

  /// Index of the first link joining a and b, if any.
  std::optional<int> link_index(NodeId a, NodeId b) const;
  bool adjacent(NodeId a, NodeId b) const { return link_index(a, b).has_value(); }

  /// Neighbors of n in ascending order (deduplicated).
  const std::vector<NodeId>& neighbors(NodeId n) const { return adjacency_.at(n); }

  std::optional<NodeId> find_label(const std::string& label) const;

 private:
  std::vector<std::string> labels_;
  std::vector<Link> links_;
  int wavelengths_ = 32;
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<int> link_lookup_;  // node_count^2, -1 when absent
};

struct ValidationReport {
  bool ok = true;
  bool biconnected = false;
  std::vector<NodeId> articulation_nodes;
  std::vector<std::string> violations;
};

/// Checks the structural assumptions the planner relies on: no self-loops,
/// no multiple links between a node pair, connected and free of
/// articulation nodes.
ValidationReport validate_topology(const PhysicalTopology& topology);

/// Articulation nodes by DFS low-link. A disconnected graph reports none;
/// pair with is_connected() when that matters.
std::vector<NodeId> articulation_nodes(const PhysicalTopology& topology);
bool is_connected(const PhysicalTopology& topology);

/// Average node degree 2E/N.
double average_connectivity(const PhysicalTopology& topology);

/// Random bi-connected topology with round(n * connectivity / 2) links:
/// a seeded random Hamiltonian cycle plus seeded random chords. For a fixed
/// (n, seed), topologies at higher connectivity contain those at lower.
PhysicalTopology generate_topology(int n, double connectivity, std::uint64_t seed,
                                   int wavelengths = 32);

}  // namespace otnplan
