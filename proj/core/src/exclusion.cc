#include "otnplan/exclusion.h"

#include <set>
#include <stdexcept>

namespace otnplan {

namespace {

const Lightpath& working_lightpath(const NetworkConfiguration& c, const LogicalHop& hop) {
  const Lightpath* lp = c.find(hop.key(), LpStatus::kWorking);
  if (lp == nullptr) throw std::invalid_argument("route uses missing lightpath " + to_string(hop.key()));
  return *lp;
}

const LspDemand& lsp_by_id(const Instance& inst, int id) {
  for (const auto& l : inst.lsps)
    if (l.id == id) return l;
  throw std::invalid_argument("unknown LSP id " + std::to_string(id));
}

// Every fiber node and link the working LSP touches.
Exclusion footprint(const NetworkConfiguration& c, const LogicalRoute& r) {
  Exclusion ex;
  for (const auto& hop : r.hops) {
    const Lightpath& lp = working_lightpath(c, hop);
    ex.nodes.insert(lp.route.nodes.begin(), lp.route.nodes.end());
    for (int e : lp.route.links(c.instance.topology)) ex.links.insert(e);
  }
  return ex;
}

}  // namespace

std::vector<int> protected_lsps(const NetworkConfiguration& working, SurvivabilityMode mode) {
  std::vector<int> out;
  if (mode == SurvivabilityMode::kNone) return out;
  for (const auto& [id, r] : working.working) {
    if (mode == SurvivabilityMode::kSingleLayer || r.hops.size() >= 2) out.push_back(id);
  }
  return out;
}

ExclusionSets compute_exclusion_sets(const NetworkConfiguration& c, SurvivabilityMode mode) {
  ExclusionSets sets;
  const bool physical = mode == SurvivabilityMode::kSingleLayer ||
                        mode == SurvivabilityMode::kSpareUnprotected ||
                        mode == SurvivabilityMode::kInterlayerBrs;
  for (int id : protected_lsps(c, mode)) {
    const LogicalRoute& r = c.working.at(id);
    const LspDemand& l = lsp_by_id(c.instance, id);
    Exclusion& lsp = sets.lsp[id];
    for (NodeId v : r.transit_nodes()) lsp.nodes.insert(v);
    if (!physical) continue;
    Exclusion fp = footprint(c, r);
    fp.nodes.erase(l.source);
    fp.nodes.erase(l.destination);
    lsp.nodes.insert(fp.nodes.begin(), fp.nodes.end());
    Exclusion& carried = sets.carried[id];
    carried.nodes = fp.nodes;
    if (mode == SurvivabilityMode::kSingleLayer) carried.links = fp.links;
  }
  return sets;
}

Exclusion pbeta_exclusion(const ExclusionSets& sets, const NetworkConfiguration& c,
                          const LightpathKey& key) {
  Exclusion ex;
  for (const auto& [id, r] : c.protection) {
    bool rides = false;
    for (const auto& hop : r.hops) rides = rides || hop.key() == key;
    if (!rides) continue;
    if (auto it = sets.carried.find(id); it != sets.carried.end()) ex.merge(it->second);
  }
  ex.nodes.erase(key.i);
  ex.nodes.erase(key.j);
  return ex;
}

Exclusion protection_lightpath_exclusion(const NetworkConfiguration& c, const Lightpath& lp,
                                         bool interface_contention) {
  Exclusion ex;
  for (NodeId v : lp.route.transit_nodes()) ex.nodes.insert(v);
  if (c.mode != SurvivabilityMode::kInterlayerBrs || lp.status != LpStatus::kWorking) return ex;

  const auto& topo = c.instance.topology;
  auto add_pbeta_links = [&](int id) {
    auto it = c.protection.find(id);
    if (it == c.protection.end()) return;
    for (const auto& hop : it->second.hops) {
      const Lightpath* p = c.find(hop.key(), LpStatus::kProtection);
      if (p == nullptr || p->route.empty()) continue;
      for (int e : p->route.links(topo)) ex.links.insert(e);
    }
  };
  const std::vector<NodeId> oxc_transit = lp.route.transit_nodes();
  const std::set<NodeId> transit(oxc_transit.begin(), oxc_transit.end());
  bool carries_single_hop = false;
  std::vector<int> multi_hop_on_lp;
  for (const auto& [id, r] : c.working) {
    bool on_lp = false;
    for (const auto& hop : r.hops) on_lp = on_lp || hop.key() == lp.key;
    if (on_lp) {
      if (r.hops.size() == 1) carries_single_hop = true;
      else multi_hop_on_lp.push_back(id);
    }
    // An OXC failure on this lightpath also fails LSPs transiting the
    // co-located router; their pLSPs must not compete with this pLP.
    for (NodeId v : r.transit_nodes()) {
      if (transit.count(v)) {
        add_pbeta_links(id);
        break;
      }
    }
  }
  // An interface failure activates this pLP for single-hop LSPs and the
  // pLSPs of the multi-hop ones at the same time.
  if (carries_single_hop && interface_contention)
    for (int id : multi_hop_on_lp) add_pbeta_links(id);
  return ex;
}

std::vector<int> mixed_riders(const NetworkConfiguration& c, const LightpathKey& key) {
  std::vector<int> ids;
  bool single = false, multi = false;
  for (const auto& [id, r] : c.working) {
    for (const auto& hop : r.hops) {
      if (hop.key() != key) continue;
      ids.push_back(id);
      (r.hops.size() == 1 ? single : multi) = true;
      break;
    }
  }
  if (!single || !multi) ids.clear();
  return ids;
}

}  // namespace otnplan
