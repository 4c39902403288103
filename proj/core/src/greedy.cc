#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>

#include "otnplan/planner.h"

namespace otnplan {

PhysicalPath shortest_fiber_path(const PhysicalTopology& topo, NodeId from, NodeId to,
                                 const Exclusion& ex, const std::vector<int>& free) {
  const int n = topo.node_count();
  std::vector<NodeId> prev(n, -1);
  std::vector<bool> seen(n, false);
  std::deque<NodeId> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (NodeId w : topo.neighbors(v)) {
      if (seen[w] || (ex.nodes.count(w) && w != to)) continue;
      const int e = *topo.link_index(v, w);
      if (ex.links.count(e) || free.at(e) <= 0) continue;
      seen[w] = true;
      prev[w] = v;
      queue.push_back(w);
    }
  }
  if (!seen[to]) return {};
  PhysicalPath p;
  for (NodeId v = to; v != -1; v = prev[v]) p.nodes.push_back(v);
  std::reverse(p.nodes.begin(), p.nodes.end());
  return p;
}

namespace {

struct OpenLp {
  std::int64_t used = 0;  // tenths
  PhysicalPath route;
};

bool avoids(const PhysicalPath& p, const PhysicalTopology& topo, const Exclusion& ex) {
  for (NodeId v : p.transit_nodes())
    if (ex.nodes.count(v)) return false;
  for (int e : p.links(topo))
    if (ex.links.count(e)) return false;
  return true;
}

}  // namespace

std::vector<double> greedy_logical(const LogicalPhaseInput& in, const PhaseModel& phase) {
  const Instance& inst = *in.instance;
  const auto& topo = inst.topology;
  const int n = topo.node_count();
  const int Q = inst.params.max_parallel;
  const std::int64_t cap = inst.params.capacity.tenths();
  const bool prot = in.status == LpStatus::kProtection;
  const UnitCosts& uc = inst.costs;

  std::vector<int> deg_left = in.residual_interfaces;
  if (deg_left.empty()) deg_left.assign(n, inst.params.max_interfaces);
  std::vector<int> free = in.residual_wavelengths;
  if (free.empty()) free.assign(topo.link_count(), inst.params.wavelengths);

  std::vector<const LspDemand*> order;
  for (int id : in.lsps)
    for (const auto& l : inst.lsps)
      if (l.id == id) order.push_back(&l);
  std::stable_sort(order.begin(), order.end(), [](const LspDemand* a, const LspDemand* b) {
    if (a->bandwidth != b->bandwidth) return a->bandwidth > b->bandwidth;
    return a->id < b->id;
  });

  std::map<LightpathKey, OpenLp> open;
  std::map<int, LogicalRoute> routes;
  const Exclusion none;

  for (const LspDemand* l : order) {
    const Exclusion* lsp_ex = &none;
    if (auto it = in.lsp_exclusions.find(l->id); prot && it != in.lsp_exclusions.end()) lsp_ex = &it->second;
    const Exclusion* carried = &none;
    if (auto it = in.carried_exclusions.find(l->id); prot && in.joint && it != in.carried_exclusions.end())
      carried = &it->second;
    std::set<LightpathKey> banned;
    if (auto it = in.working_routes.find(l->id); prot && it != in.working_routes.end())
      for (const auto& h : it->second.hops) banned.insert(h.key());

    // Cheapest way to cross (u, v): an open lightpath with room, else a new one.
    struct Choice {
      double cost = std::numeric_limits<double>::infinity();
      int q = 0;
      bool fresh = false;
      PhysicalPath route;
    };
    auto choose = [&](NodeId u, NodeId v) {
      Choice best;
      const double hop = uc.transit_per_gbps * l->bandwidth.gbps();
      for (int q = 1; q <= Q; ++q) {
        const LightpathKey k = LightpathKey::of(u, v, q);
        if (banned.count(k)) continue;
        if (auto it = open.find(k); it != open.end()) {
          if (it->second.used + l->bandwidth.tenths() > cap) continue;
          if (in.joint && prot && !avoids(it->second.route, topo, *carried)) continue;
          if (hop < best.cost) best = {hop, q, false, {}};
          continue;
        }
        if (deg_left[u] <= 0 || deg_left[v] <= 0) continue;
        double c = uc.lightpath + hop;
        PhysicalPath route;
        if (in.joint) {
          Exclusion ex = *carried;
          ex.nodes.erase(u);
          ex.nodes.erase(v);
          route = shortest_fiber_path(topo, k.i, k.j, ex, free);
          if (route.empty()) continue;
          c += uc.wavelength * route.hop_count();
        }
        if (c < best.cost) best = {c, q, true, std::move(route)};
      }
      return best;
    };

    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<NodeId> prev(n, -1);
    std::vector<Choice> via(n);
    std::vector<bool> done(n, false);
    dist[l->source] = 0.0;
    for (int iter = 0; iter < n; ++iter) {
      NodeId u = -1;
      for (NodeId v = 0; v < n; ++v)
        if (!done[v] && dist[v] < std::numeric_limits<double>::infinity() && (u < 0 || dist[v] < dist[u])) u = v;
      if (u < 0 || u == l->destination) break;
      done[u] = true;
      for (NodeId v = 0; v < n; ++v) {
        if (v == u || done[v] || lsp_ex->nodes.count(v)) continue;
        Choice c = choose(u, v);
        if (dist[u] + c.cost < dist[v] - 1e-12) {
          dist[v] = dist[u] + c.cost;
          prev[v] = u;
          via[v] = std::move(c);
        }
      }
    }
    if (prev[l->destination] < 0) return {};

    LogicalRoute r;
    for (NodeId v = l->destination; v != l->source; v = prev[v])
      r.hops.push_back({prev[v], v, via[v].q});
    std::reverse(r.hops.begin(), r.hops.end());
    for (const auto& h : r.hops) {
      const LightpathKey k = h.key();
      auto it = open.find(k);
      if (it == open.end()) {
        if (--deg_left[k.i] < 0 || --deg_left[k.j] < 0) return {};
        OpenLp lp;
        if (in.joint) {
          Exclusion ex = *carried;
          ex.nodes.erase(k.i);
          ex.nodes.erase(k.j);
          lp.route = shortest_fiber_path(topo, k.i, k.j, ex, free);
          if (lp.route.empty()) return {};
          for (int e : lp.route.links(topo)) --free[e];
        }
        it = open.emplace(k, std::move(lp)).first;
      }
      it->second.used += l->bandwidth.tenths();
    }
    routes[l->id] = std::move(r);
  }

  std::vector<double> x(phase.model.variable_count(), 0.0);
  const auto& beta = prot ? phase.vars.pbeta : phase.vars.wbeta;
  const auto& delta = prot ? phase.vars.pdelta : phase.vars.wdelta;
  const auto& joint = prot ? phase.vars.pblam_joint : phase.vars.wlam_joint;
  for (const auto& [k, lp] : open) {
    x.at(beta.at(k)) = 1.0;
    for (std::size_t s = 1; s < lp.route.nodes.size(); ++s)
      x.at(joint.at({k.i, k.j, k.q, lp.route.nodes[s - 1], lp.route.nodes[s]})) = 1.0;
  }
  for (const auto& [id, r] : routes)
    for (const auto& h : r.hops) x.at(delta.at({id, h.from, h.to, h.q})) = 1.0;
  return x;
}

std::vector<double> greedy_routing(const RoutingPhaseInput& in, const PhaseModel& phase) {
  const auto& topo = *in.topology;
  std::vector<int> free = in.residual_wavelengths;
  if (free.empty()) free.assign(topo.link_count(), topo.wavelengths());
  const auto& lam = in.protection ? phase.vars.plam : phase.vars.wlam;
  std::vector<double> x(phase.model.variable_count(), 0.0);
  for (const auto& r : in.lightpaths) {
    Exclusion ex = r.exclusion;
    if (r.protects)
      for (int e : r.protects->links(topo)) ex.links.insert(e);
    PhysicalPath p = shortest_fiber_path(topo, r.key.i, r.key.j, ex, free);
    if (p.empty()) return {};
    for (int e : p.links(topo)) --free[e];
    for (std::size_t s = 1; s < p.nodes.size(); ++s) x.at(lam.at({r.label, p.nodes[s - 1], p.nodes[s]})) = 1.0;
  }
  return x;
}

}  // namespace otnplan
