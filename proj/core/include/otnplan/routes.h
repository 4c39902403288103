#pragma once

#include <compare>
#include <set>
#include <string>
#include <vector>

#include "otnplan/topology.h"

namespace otnplan {

/// Which LSPs a lightpath carries: working LSPs (wbeta) or protection LSPs
/// (pbeta).
enum class LpStatus { kWorking, kProtection };

/// q-th lightpath of a given status between an unordered node pair.
/// Normalized so that i < j; q starts at 1.
struct LightpathKey {
  NodeId i = 0;
  NodeId j = 0;
  int q = 1;

  static LightpathKey of(NodeId a, NodeId b, int q) {
    return a < b ? LightpathKey{a, b, q} : LightpathKey{b, a, q};
  }
  friend bool operator==(const LightpathKey&, const LightpathKey&) = default;
  friend auto operator<=>(const LightpathKey&, const LightpathKey&) = default;
};

std::string to_string(const LightpathKey& key);

/// One traversal of a lightpath in the direction of the LSP.
struct LogicalHop {
  NodeId from = 0;
  NodeId to = 0;
  int q = 1;

  LightpathKey key() const { return LightpathKey::of(from, to, q); }
  friend bool operator==(const LogicalHop&, const LogicalHop&) = default;
};

/// Route of an LSP over the logical topology, source to destination.
struct LogicalRoute {
  std::vector<LogicalHop> hops;

  bool empty() const { return hops.empty(); }
  std::vector<NodeId> nodes() const;
  /// Routers the LSP transits (every node except the endpoints).
  std::vector<NodeId> transit_nodes() const;
  friend bool operator==(const LogicalRoute&, const LogicalRoute&) = default;
};

/// Route of a lightpath over fibers as a node sequence.
struct PhysicalPath {
  std::vector<NodeId> nodes;

  bool empty() const { return nodes.size() < 2; }
  int hop_count() const { return nodes.empty() ? 0 : static_cast<int>(nodes.size()) - 1; }
  std::vector<NodeId> transit_nodes() const;
  /// Link indices in traversal order; throws std::invalid_argument when two
  /// consecutive nodes are not adjacent.
  std::vector<int> links(const PhysicalTopology& topology) const;
  friend bool operator==(const PhysicalPath&, const PhysicalPath&) = default;
};

/// Nodes and links an entity must avoid.
struct Exclusion {
  std::set<NodeId> nodes;
  std::set<int> links;

  bool empty() const { return nodes.empty() && links.empty(); }
  void merge(const Exclusion& other) {
    nodes.insert(other.nodes.begin(), other.nodes.end());
    links.insert(other.links.begin(), other.links.end());
  }
};

}  // namespace otnplan
