#include "otnplan/routes.h"

#include <stdexcept>

namespace otnplan {

std::string to_string(const LightpathKey& key) {
  return "(" + std::to_string(key.i) + "," + std::to_string(key.j) + ")#" + std::to_string(key.q);
}

std::vector<NodeId> LogicalRoute::nodes() const {
  std::vector<NodeId> out;
  if (hops.empty()) return out;
  out.push_back(hops.front().from);
  for (const auto& h : hops) out.push_back(h.to);
  return out;
}

std::vector<NodeId> LogicalRoute::transit_nodes() const {
  std::vector<NodeId> out;
  for (size_t k = 1; k < hops.size(); ++k) out.push_back(hops[k].from);
  return out;
}

std::vector<NodeId> PhysicalPath::transit_nodes() const {
  if (nodes.size() < 3) return {};
  return std::vector<NodeId>(nodes.begin() + 1, nodes.end() - 1);
}

std::vector<int> PhysicalPath::links(const PhysicalTopology& topology) const {
  std::vector<int> out;
  for (size_t k = 1; k < nodes.size(); ++k) {
    auto idx = topology.link_index(nodes[k - 1], nodes[k]);
    if (!idx) {
      throw std::invalid_argument("no link between " + std::to_string(nodes[k - 1]) + " and " +
                                  std::to_string(nodes[k]));
    }
    out.push_back(*idx);
  }
  return out;
}

}  // namespace otnplan
