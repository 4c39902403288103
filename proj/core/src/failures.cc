#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "otnplan/verify.h"

namespace otnplan {

std::string to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::kLink: return "link";
    case FailureKind::kNode: return "node";
    case FailureKind::kInterface: return "interface";
  }
  return "?";
}

std::string describe(const FailureScenario& s, const PhysicalTopology& topo) {
  switch (s.kind) {
    case FailureKind::kLink: {
      const Link& l = topo.link(s.link);
      return "link " + topo.label(l.a) + "-" + topo.label(l.b);
    }
    case FailureKind::kNode: return "node " + topo.label(s.node);
    case FailureKind::kInterface:
      return "interface " + topo.label(s.node) + " of " +
             (s.status == LpStatus::kWorking ? "wLP " : "pbLP ") + topo.label(s.lightpath.i) + "-" +
             topo.label(s.lightpath.j) + "#" + std::to_string(s.lightpath.q);
  }
  return "?";
}

std::vector<FailureScenario> enumerate_failures(const NetworkConfiguration& config) {
  const auto& topo = config.instance.topology;
  std::vector<FailureScenario> out;
  for (int e = 0; e < topo.link_count(); ++e) out.push_back({FailureKind::kLink, e, -1, {}, LpStatus::kWorking});
  for (NodeId v = 0; v < topo.node_count(); ++v) out.push_back({FailureKind::kNode, -1, v, {}, LpStatus::kWorking});
  for (const auto& lp : config.lightpaths) {
    out.push_back({FailureKind::kInterface, -1, lp.key.i, lp.key, lp.status});
    out.push_back({FailureKind::kInterface, -1, lp.key.j, lp.key, lp.status});
  }
  return out;
}

double RestorabilityReport::restorability() const {
  const int denom = affected - exempt;
  return denom <= 0 ? 1.0 : static_cast<double>(recovered) / denom;
}

namespace {

bool path_down(const PhysicalPath& p, const PhysicalTopology& topo, const FailureScenario& s) {
  switch (s.kind) {
    case FailureKind::kLink: {
      const auto links = p.links(topo);
      return std::find(links.begin(), links.end(), s.link) != links.end();
    }
    case FailureKind::kNode: return std::find(p.nodes.begin(), p.nodes.end(), s.node) != p.nodes.end();
    case FailureKind::kInterface: return false;
  }
  return false;
}

bool lp_down(const Lightpath& lp, const PhysicalTopology& topo, const FailureScenario& s) {
  if (s.kind == FailureKind::kInterface) return lp.key == s.lightpath && lp.status == s.status;
  return path_down(lp.route, topo, s);
}

const LspDemand* lsp_by_id(const Instance& inst, int id) {
  for (const auto& l : inst.lsps)
    if (l.id == id) return &l;
  return nullptr;
}

// Entities a recovery switches on: optical protection lightpaths (by index
// into config.lightpaths) and protection-carrying lightpaths.
struct Activation {
  std::set<int> plp;
  std::set<int> pbeta;
};

}  // namespace

RestorabilityReport check_restorability(const NetworkConfiguration& c,
                                        const std::vector<FailureScenario>& scenarios) {
  const auto& topo = c.instance.topology;
  const bool ml = is_multilayer(c.mode);
  auto index_of = [&](const LightpathKey& k, LpStatus st) -> int {
    for (std::size_t i = 0; i < c.lightpaths.size(); ++i)
      if (c.lightpaths[i].key == k && c.lightpaths[i].status == st) return static_cast<int>(i);
    return -1;
  };
  const auto loads = link_loads(c);

  RestorabilityReport report;
  for (const auto& s : scenarios) {
    ScenarioResult res;
    res.scenario = s;
    std::map<int, Activation> used;  // per recovered LSP
    for (const auto& [id, route] : c.working) {
      std::vector<int> lps;
      bool hit = false;
      for (const auto& h : route.hops) {
        const int idx = index_of(h.key(), LpStatus::kWorking);
        lps.push_back(idx);
        if (idx < 0 || lp_down(c.lightpaths[idx], topo, s)) hit = true;
      }
      if (!hit) continue;
      res.affected.push_back(id);
      const LspDemand* l = lsp_by_id(c.instance, id);
      if (s.kind == FailureKind::kNode && l && (l->source == s.node || l->destination == s.node)) {
        res.exempt.push_back(id);
        continue;
      }
      if (c.mode == SurvivabilityMode::kNone) {
        res.failed.push_back(id);
        continue;
      }
      const auto transit = route.transit_nodes();
      bool use_plsp = !ml;
      if (ml) {
        use_plsp = (s.kind == FailureKind::kNode &&
                    std::find(transit.begin(), transit.end(), s.node) != transit.end()) ||
                   (s.kind == FailureKind::kInterface && route.hops.size() >= 2);
      }
      Activation act;
      bool ok = true;
      if (use_plsp) {
        auto it = c.protection.find(id);
        if (it == c.protection.end() || it->second.empty()) {
          ok = false;
        } else {
          for (const auto& h : it->second.hops) {
            const int idx = index_of(h.key(), LpStatus::kProtection);
            if (idx < 0) {
              ok = false;
              break;
            }
            const Lightpath& p = c.lightpaths[idx];
            if (s.kind == FailureKind::kNode && (h.from == s.node || h.to == s.node)) ok = false;
            if (lp_down(p, topo, s)) {
              if (c.mode == SurvivabilityMode::kDoubleProtection && p.protection &&
                  !path_down(*p.protection, topo, s) && s.kind != FailureKind::kInterface) {
                act.plp.insert(idx);
              } else {
                ok = false;
              }
            }
            act.pbeta.insert(idx);
          }
        }
      } else {
        for (int idx : lps) {
          if (idx < 0) {
            ok = false;
            break;
          }
          const Lightpath& lp = c.lightpaths[idx];
          if (!lp_down(lp, topo, s)) continue;
          if (!lp.protection || path_down(*lp.protection, topo, s)) {
            ok = false;
            break;
          }
          act.plp.insert(idx);
        }
      }
      if (ok) {
        used[id] = std::move(act);
      } else {
        res.failed.push_back(id);
      }
    }

    if (c.mode == SurvivabilityMode::kInterlayerBrs && !used.empty()) {
      Activation all;
      for (const auto& [id, a] : used) {
        all.plp.insert(a.plp.begin(), a.plp.end());
        all.pbeta.insert(a.pbeta.begin(), a.pbeta.end());
      }
      std::vector<int> demand(topo.link_count(), 0);
      for (int idx : all.plp)
        for (int e : c.lightpaths[idx].protection->links(topo)) ++demand[e];
      for (int idx : all.pbeta)
        for (int e : c.lightpaths[idx].route.links(topo)) ++demand[e];
      std::set<int> contended;
      for (int e = 0; e < topo.link_count(); ++e) {
        const int pool = std::max(loads[e].s, loads[e].w2);
        if (demand[e] > pool) {
          contended.insert(e);
          const Link& L = topo.link(e);
          res.contention.push_back("link " + topo.label(L.a) + "-" + topo.label(L.b) + " needs " +
                                   std::to_string(demand[e]) + " shared wavelengths, pool " +
                                   std::to_string(pool));
        }
      }
      for (auto it = used.begin(); it != used.end();) {
        bool touches = false;
        for (int idx : it->second.plp)
          for (int e : c.lightpaths[idx].protection->links(topo)) touches = touches || contended.count(e);
        for (int idx : it->second.pbeta)
          for (int e : c.lightpaths[idx].route.links(topo)) touches = touches || contended.count(e);
        if (touches) {
          res.failed.push_back(it->first);
          it = used.erase(it);
        } else {
          ++it;
        }
      }
    }
    for (const auto& [id, a] : used) res.recovered.push_back(id);
    std::sort(res.failed.begin(), res.failed.end());

    report.affected += static_cast<int>(res.affected.size());
    report.exempt += static_cast<int>(res.exempt.size());
    report.recovered += static_cast<int>(res.recovered.size());
    report.failed += static_cast<int>(res.failed.size());
    report.contention += static_cast<int>(res.contention.size());
    report.scenarios.push_back(std::move(res));
  }
  return report;
}

namespace {

std::set<NodeId> fiber_nodes(const NetworkConfiguration& c, const LogicalRoute& r, LpStatus st) {
  std::set<NodeId> out;
  for (const auto& h : r.hops)
    if (const Lightpath* lp = c.find(h.key(), st)) out.insert(lp->route.nodes.begin(), lp->route.nodes.end());
  return out;
}

std::set<int> fiber_links(const NetworkConfiguration& c, const LogicalRoute& r, LpStatus st) {
  std::set<int> out;
  for (const auto& h : r.hops)
    if (const Lightpath* lp = c.find(h.key(), st))
      for (int e : lp->route.links(c.instance.topology)) out.insert(e);
  return out;
}

}  // namespace

std::vector<std::string> check_disjointness(const NetworkConfiguration& c) {
  std::vector<std::string> v;
  const auto& inst = c.instance;
  const auto& topo = inst.topology;
  const bool ml = is_multilayer(c.mode);
  const bool physical_nodes = c.mode == SurvivabilityMode::kSingleLayer ||
                              c.mode == SurvivabilityMode::kSpareUnprotected ||
                              c.mode == SurvivabilityMode::kInterlayerBrs;

  // Routes ride existing lightpaths of their own status and stay within capacity.
  std::map<std::pair<LightpathKey, LpStatus>, std::int64_t> carried;
  for (const auto* routes : {&c.working, &c.protection}) {
    const LpStatus st = routes == &c.working ? LpStatus::kWorking : LpStatus::kProtection;
    for (const auto& [id, r] : *routes) {
      const LspDemand* l = lsp_by_id(inst, id);
      if (!l) {
        v.push_back("route for unknown LSP " + std::to_string(id));
        continue;
      }
      const auto nodes = r.nodes();
      if (nodes.empty() || nodes.front() != l->source || nodes.back() != l->destination)
        v.push_back("LSP " + std::to_string(id) + " route does not join its endpoints");
      for (const auto& h : r.hops) {
        if (!c.find(h.key(), st)) {
          v.push_back("LSP " + std::to_string(id) + " rides missing " +
                      (st == LpStatus::kWorking ? "working" : "protection") + " lightpath " + to_string(h.key()));
        }
        carried[{h.key(), st}] += l->bandwidth.tenths();
      }
    }
  }
  for (const auto& [k, tenths] : carried) {
    if (tenths > inst.params.capacity.tenths())
      v.push_back("lightpath " + to_string(k.first) + " exceeds capacity");
  }

  std::vector<int> deg(topo.node_count(), 0);
  for (const auto& lp : c.lightpaths) {
    ++deg[lp.key.i];
    ++deg[lp.key.j];
    if (lp.key.q > inst.params.max_parallel) v.push_back("lightpath " + to_string(lp.key) + " exceeds Q");
    if (lp.route.nodes.empty() || lp.route.nodes.front() != lp.key.i || lp.route.nodes.back() != lp.key.j)
      v.push_back("lightpath " + to_string(lp.key) + " has no fiber route between its endpoints");
  }
  const int T = inst.params.max_interfaces > 0
                    ? inst.params.max_interfaces
                    : SystemParams::default_interfaces(topo.node_count(), inst.params.max_parallel);
  for (NodeId n = 0; n < topo.node_count(); ++n)
    if (deg[n] > T) v.push_back("node " + topo.label(n) + " uses more than T interfaces");

  const auto loads = link_loads(c);
  for (int e = 0; e < topo.link_count(); ++e) {
    const auto& l = loads[e];
    const int used = c.mode == SurvivabilityMode::kInterlayerBrs ? l.w1 + std::max(l.s, l.w2) : l.w1 + l.w2 + l.s;
    if (used > inst.params.wavelengths) v.push_back("link " + std::to_string(e) + " exceeds W");
  }

  // LSP-level protection.
  for (const auto& [id, w] : c.working) {
    const bool needs = c.mode == SurvivabilityMode::kSingleLayer || (ml && w.hops.size() >= 2);
    auto it = c.protection.find(id);
    if (!needs) {
      if (it != c.protection.end()) v.push_back("LSP " + std::to_string(id) + " has an unneeded protection LSP");
      continue;
    }
    if (it == c.protection.end()) {
      v.push_back("LSP " + std::to_string(id) + " lacks a protection LSP");
      continue;
    }
    const LogicalRoute& p = it->second;
    const std::string tag = "LSP " + std::to_string(id) + ": ";
    const auto wt = w.transit_nodes();
    const auto pt = p.transit_nodes();
    for (NodeId n : p.nodes())
      if (std::find(wt.begin(), wt.end(), n) != wt.end())
        v.push_back(tag + "protection shares logical node " + topo.label(n));
    for (NodeId n : w.nodes())
      if (std::find(pt.begin(), pt.end(), n) != pt.end())
        v.push_back(tag + "working shares logical node " + topo.label(n));
    for (const auto& hw : w.hops)
      for (const auto& hp : p.hops)
        if (hw.key() == hp.key()) v.push_back(tag + "shares logical link " + to_string(hw.key()));
    if (physical_nodes) {
      const LspDemand* l = lsp_by_id(inst, id);
      auto wn = fiber_nodes(c, w, LpStatus::kWorking);
      auto pn = fiber_nodes(c, p, LpStatus::kProtection);
      for (NodeId n : pn)
        if (wn.count(n) && n != l->source && n != l->destination)
          v.push_back(tag + "shares physical node " + topo.label(n));
    }
    if (c.mode == SurvivabilityMode::kSingleLayer) {
      auto wl = fiber_links(c, w, LpStatus::kWorking);
      for (int e : fiber_links(c, p, LpStatus::kProtection))
        if (wl.count(e)) v.push_back(tag + "shares physical link " + std::to_string(e));
    }
  }
  for (const auto& [id, p] : c.protection)
    if (!c.working.count(id)) v.push_back("protection LSP " + std::to_string(id) + " without a working LSP");

  // Lightpath-level protection.
  for (const auto& lp : c.lightpaths) {
    const bool needs = ml && (lp.status == LpStatus::kWorking || c.mode == SurvivabilityMode::kDoubleProtection);
    const std::string tag = "lightpath " + to_string(lp.key) + ": ";
    if (!needs) {
      if (lp.protection) v.push_back(tag + "has an unneeded protection lightpath");
      continue;
    }
    if (!lp.protection) {
      v.push_back(tag + "lacks a protection lightpath");
      continue;
    }
    const PhysicalPath& pp = *lp.protection;
    if (pp.nodes.empty() || pp.nodes.front() != lp.key.i || pp.nodes.back() != lp.key.j) {
      v.push_back(tag + "protection does not join the endpoints");
      continue;
    }
    auto wl = lp.route.links(topo);
    for (int e : pp.links(topo))
      if (std::find(wl.begin(), wl.end(), e) != wl.end()) v.push_back(tag + "protection shares link " + std::to_string(e));
    auto wt = lp.route.transit_nodes();
    for (NodeId n : pp.nodes)
      if (std::find(wt.begin(), wt.end(), n) != wt.end()) v.push_back(tag + "protection shares node " + topo.label(n));
  }
  return v;
}

std::string restorability_to_text(const RestorabilityReport& report, const PhysicalTopology& topology) {
  auto ids = [](const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s + "]";
  };
  std::ostringstream out;
  for (const auto& r : report.scenarios) {
    out << "scenario " << describe(r.scenario, topology) << ": affected " << ids(r.affected) << " exempt "
        << ids(r.exempt) << " recovered " << ids(r.recovered) << " failed " << ids(r.failed) << '\n';
    for (const auto& c : r.contention) out << "  contention " << c << '\n';
  }
  char pct[32];
  std::snprintf(pct, sizeof pct, "%.2f", report.restorability() * 100.0);
  out << "summary: scenarios " << report.scenarios.size() << " affected " << report.affected << " exempt "
      << report.exempt << " recovered " << report.recovered << " failed " << report.failed << " contention "
      << report.contention << " restorability " << pct << "%\n";
  return out.str();
}

}  // namespace otnplan
