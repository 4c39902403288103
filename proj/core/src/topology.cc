#include "otnplan/topology.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace otnplan {

PhysicalTopology::PhysicalTopology(std::vector<std::string> labels, std::vector<Link> links,
                                   int wavelengths)
    : labels_(std::move(labels)), links_(std::move(links)), wavelengths_(wavelengths) {
  const int n = node_count();
  adjacency_.assign(n, {});
  link_lookup_.assign(static_cast<size_t>(n) * n, -1);
  for (int idx = 0; idx < link_count(); ++idx) {
    const Link& l = links_[idx];
    if (l.a < 0 || l.b < 0 || l.a >= n || l.b >= n) {
      throw std::invalid_argument("link references unknown node index");
    }
    if (l.a == l.b) continue;
    int& slot = link_lookup_[static_cast<size_t>(l.a) * n + l.b];
    if (slot >= 0) continue;
    slot = idx;
    link_lookup_[static_cast<size_t>(l.b) * n + l.a] = idx;
    adjacency_[l.a].push_back(l.b);
    adjacency_[l.b].push_back(l.a);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

std::optional<int> PhysicalTopology::link_index(NodeId a, NodeId b) const {
  const int n = node_count();
  if (a < 0 || b < 0 || a >= n || b >= n) return std::nullopt;
  int idx = link_lookup_[static_cast<size_t>(a) * n + b];
  if (idx < 0) return std::nullopt;
  return idx;
}

std::optional<NodeId> PhysicalTopology::find_label(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<NodeId>(it - labels_.begin());
}

bool is_connected(const PhysicalTopology& topology) {
  const int n = topology.node_count();
  if (n == 0) return true;
  std::vector<bool> seen(n, false);
  std::vector<NodeId> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : topology.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

std::vector<NodeId> articulation_nodes(const PhysicalTopology& topology) {
  const int n = topology.node_count();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> is_cut(n, false);
  int timer = 0;
  std::function<void(NodeId, NodeId)> dfs = [&](NodeId u, NodeId parent) {
    disc[u] = low[u] = timer++;
    int children = 0;
    for (NodeId v : topology.neighbors(u)) {
      if (v == parent) continue;
      if (disc[v] >= 0) {
        low[u] = std::min(low[u], disc[v]);
        continue;
      }
      ++children;
      dfs(v, u);
      low[u] = std::min(low[u], low[v]);
      if (parent >= 0 && low[v] >= disc[u]) is_cut[u] = true;
    }
    if (parent < 0 && children > 1) is_cut[u] = true;
  };
  for (NodeId u = 0; u < n; ++u) {
    if (disc[u] < 0) dfs(u, -1);
  }
  std::vector<NodeId> out;
  for (NodeId u = 0; u < n; ++u) {
    if (is_cut[u]) out.push_back(u);
  }
  return out;
}

ValidationReport validate_topology(const PhysicalTopology& topology) {
  ValidationReport report;
  std::set<Link> seen;
  for (const Link& l : topology.links()) {
    if (l.a == l.b) {
      report.violations.push_back("self-loop at node " + topology.label(l.a));
      continue;
    }
    if (!seen.insert(l).second) {
      report.violations.push_back("multiple links between " + topology.label(l.a) + " and " +
                                  topology.label(l.b));
    }
  }
  const bool connected = is_connected(topology);
  report.articulation_nodes = articulation_nodes(topology);
  report.biconnected = connected && topology.node_count() >= 3 &&
                       report.articulation_nodes.empty();
  if (!connected) {
    report.violations.push_back("not bi-connected: graph is disconnected");
  } else if (!report.articulation_nodes.empty()) {
    std::string names;
    for (NodeId n : report.articulation_nodes) {
      if (!names.empty()) names += ", ";
      names += topology.label(n);
    }
    report.violations.push_back("not bi-connected: articulation node(s) " + names);
  } else if (topology.node_count() < 3) {
    report.violations.push_back("not bi-connected: fewer than 3 nodes");
  }
  report.ok = report.violations.empty();
  return report;
}

double average_connectivity(const PhysicalTopology& topology) {
  if (topology.node_count() == 0) return 0.0;
  return 2.0 * topology.link_count() / topology.node_count();
}

PhysicalTopology generate_topology(int n, double connectivity, std::uint64_t seed,
                                   int wavelengths) {
  if (n < 3) throw std::invalid_argument("generate_topology: need at least 3 nodes");
  if (!(connectivity >= 2.0) || connectivity > n - 1) {
    throw std::invalid_argument("generate_topology: connectivity must lie in [2, n-1]");
  }
  const long max_links = static_cast<long>(n) * (n - 1) / 2;
  const long target = std::clamp<long>(std::lround(n * connectivity / 2.0), n, max_links);

  std::mt19937_64 rng(seed);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<Link> links;
  std::set<Link> used;
  for (int k = 0; k < n; ++k) {
    Link l(order[k], order[(k + 1) % n]);
    links.push_back(l);
    used.insert(l);
  }
  std::vector<Link> chords;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (!used.count(Link(a, b))) chords.emplace_back(a, b);
    }
  }
  std::shuffle(chords.begin(), chords.end(), rng);
  for (long k = 0; static_cast<long>(links.size()) < target; ++k) links.push_back(chords[k]);

  std::vector<std::string> labels;
  for (int k = 0; k < n; ++k) labels.push_back(std::to_string(k));
  return PhysicalTopology(std::move(labels), std::move(links), wavelengths);
}

}  // namespace otnplan
