#include <algorithm>

#include "otnplan/configuration.h"

namespace otnplan {

const Lightpath* NetworkConfiguration::find(const LightpathKey& key, LpStatus status) const {
  for (const auto& lp : lightpaths)
    if (lp.key == key && lp.status == status) return &lp;
  return nullptr;
}

std::vector<LinkLoad> link_loads(const NetworkConfiguration& config) {
  const auto& topo = config.instance.topology;
  std::vector<LinkLoad> loads(topo.link_count());
  for (const auto& lp : config.lightpaths) {
    for (int e : lp.route.links(topo)) {
      if (lp.status == LpStatus::kWorking) ++loads[e].w1;
      else ++loads[e].w2;
    }
    if (lp.protection)
      for (int e : lp.protection->links(topo)) ++loads[e].s;
  }
  return loads;
}

std::vector<double> transit_traffic(const NetworkConfiguration& config) {
  const auto& inst = config.instance;
  std::vector<double> delta(inst.topology.node_count(), 0.0);
  std::map<int, double> bw;
  for (const auto& l : inst.lsps) bw[l.id] = l.bandwidth.gbps();
  for (const auto* routes : {&config.working, &config.protection}) {
    for (const auto& [id, r] : *routes) {
      if (r.empty()) continue;
      const double b = bw.at(id);
      for (const auto& h : r.hops) delta[h.to] += b;
      delta[r.hops.back().to] -= b;
    }
  }
  return delta;
}

BrsSharing apply_brs_sharing(const std::vector<LinkLoad>& loads) {
  BrsSharing out;
  int w2_total = 0;
  for (const auto& l : loads) {
    out.per_link.push_back(l.w1 + std::max(l.s, l.w2));
    out.extra += std::max(0, l.w2 - l.s);
    w2_total += l.w2;
  }
  out.reuse = w2_total == 0 ? 1.0 : 1.0 - static_cast<double>(out.extra) / w2_total;
  return out;
}

int wavelength_count(const NetworkConfiguration& config) {
  const auto loads = link_loads(config);
  int total = 0;
  if (config.mode == SurvivabilityMode::kInterlayerBrs) {
    for (int c : apply_brs_sharing(loads).per_link) total += c;
  } else {
    for (const auto& l : loads) total += l.w1 + l.w2 + l.s;
  }
  return total;
}

std::map<std::pair<NodeId, NodeId>, std::pair<int, int>> pair_capacities(
    const NetworkConfiguration& config) {
  std::map<std::pair<NodeId, NodeId>, std::pair<int, int>> out;
  for (const auto& lp : config.lightpaths) {
    auto& c = out[{lp.key.i, lp.key.j}];
    if (lp.status == LpStatus::kWorking) ++c.first;
    else ++c.second;
  }
  return out;
}

CostBreakdown total_cost(int lightpaths, int wavelengths, double transit_gbps, const UnitCosts& costs) {
  CostBreakdown c;
  c.lightpaths = lightpaths;
  c.wavelengths = wavelengths;
  c.transit_gbps = transit_gbps;
  c.transit = costs.transit_per_gbps * transit_gbps;
  c.lightpath = costs.lightpath * lightpaths;
  c.wavelength = costs.wavelength * wavelengths;
  c.total = c.transit + c.lightpath + c.wavelength;
  return c;
}

CostBreakdown total_cost(const NetworkConfiguration& config) {
  double transit = 0.0;
  for (double d : transit_traffic(config)) transit += d;
  CostBreakdown c = total_cost(static_cast<int>(config.lightpaths.size()), wavelength_count(config),
                               transit, config.instance.costs);
  for (const auto& lp : config.lightpaths)
    if (lp.status == LpStatus::kProtection) ++c.protection_lightpaths;
  if (config.mode == SurvivabilityMode::kInterlayerBrs)
    c.extra_wavelengths = apply_brs_sharing(link_loads(config)).extra;
  return c;
}

}  // namespace otnplan
