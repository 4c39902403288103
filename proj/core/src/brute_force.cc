#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "otnplan/verify.h"

namespace otnplan {

namespace {

// A decision variable set to 1, as a sortable tuple mirroring the planner's
// variable order: (0, i, j, q) lightpaths, (1, lsp, from, to, q) routing,
// (2, i, j, q, m, n) joint fiber routing, (3, label, m, n) fiber routing.
using One = std::array<int, 7>;

bool lex_smaller(const std::vector<One>& a, const std::vector<One>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k)
    if (a[k] != b[k]) return a[k] < b[k];
  return a.size() < b.size();
}

struct Best {
  double cost = std::numeric_limits<double>::infinity();
  std::vector<One> ones;
  bool found = false;

  double slack() const { return found ? 1e-6 * std::max(1.0, std::fabs(cost)) : 0.0; }
  bool prune(double partial) const { return found && partial > cost + slack(); }
  bool offer(double c, std::vector<One> o) {
    std::sort(o.rbegin(), o.rend());
    if (found && c > cost + slack()) return false;
    if (found && c >= cost - slack() && !lex_smaller(o, ones)) return false;
    cost = c;
    ones = std::move(o);
    found = true;
    return true;
  }
};

using Path = std::vector<NodeId>;

void fiber_paths(const PhysicalTopology& topo, NodeId from, NodeId to, const Exclusion& ex,
                 std::vector<Path>& out) {
  Path cur{from};
  std::vector<bool> on(topo.node_count(), false);
  on[from] = true;
  std::function<void(NodeId)> dfs = [&](NodeId v) {
    if (v == to) {
      out.push_back(cur);
      return;
    }
    for (NodeId w : topo.neighbors(v)) {
      if (on[w] || (w != to && ex.nodes.count(w))) continue;
      if (ex.links.count(*topo.link_index(v, w))) continue;
      on[w] = true;
      cur.push_back(w);
      dfs(w);
      cur.pop_back();
      on[w] = false;
    }
  };
  dfs(from);
  std::stable_sort(out.begin(), out.end(), [](const Path& a, const Path& b) { return a.size() < b.size(); });
}

std::vector<int> path_links(const PhysicalTopology& topo, const Path& p) {
  std::vector<int> out;
  for (std::size_t k = 1; k < p.size(); ++k) out.push_back(*topo.link_index(p[k - 1], p[k]));
  return out;
}

int hop_distance(const PhysicalTopology& topo, NodeId a, NodeId b) {
  std::vector<int> d(topo.node_count(), -1);
  std::deque<NodeId> q{a};
  d[a] = 0;
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop_front();
    for (NodeId w : topo.neighbors(v))
      if (d[w] < 0) {
        d[w] = d[v] + 1;
        q.push_back(w);
      }
  }
  return d[b] < 0 ? 1 << 20 : d[b];
}

struct OLsp {
  int id;
  NodeId s, d;
  std::int64_t b;  // tenths
  double gbps;
};

struct Grouping {
  NodeId i, j;
  std::set<int> lsps;
};

// ---- fiber routing of a fixed lightpath list ----

struct RouteReq {
  int label;
  NodeId i, j;
  Exclusion ex;  // protected route links already included
};

std::map<int, Path> enumerate_routing(const PhysicalTopology& topo, const std::vector<RouteReq>& reqs,
                                      std::vector<int> free, double c_lambda) {
  std::vector<std::vector<Path>> cand(reqs.size());
  std::vector<int> min_hops(reqs.size() + 1, 0);
  for (std::size_t r = 0; r < reqs.size(); ++r) {
    fiber_paths(topo, reqs[r].i, reqs[r].j, reqs[r].ex, cand[r]);
    if (cand[r].empty()) throw std::runtime_error("oracle: lightpath cannot be routed");
  }
  for (std::size_t r = reqs.size(); r-- > 0;)
    min_hops[r] = min_hops[r + 1] + static_cast<int>(cand[r].front().size()) - 1;

  Best best;
  std::vector<int> pick(reqs.size());
  std::vector<int> best_pick;
  std::function<void(std::size_t, int)> dfs = [&](std::size_t r, int hops) {
    if (best.prune(c_lambda * (hops + min_hops[r]))) return;
    if (r == reqs.size()) {
      std::vector<One> ones;
      for (std::size_t k = 0; k < reqs.size(); ++k) {
        const Path& p = cand[k][pick[k]];
        for (std::size_t s = 1; s < p.size(); ++s) ones.push_back({3, reqs[k].label, p[s - 1], p[s], 0, 0, 0});
      }
      if (best.offer(c_lambda * hops, std::move(ones))) best_pick = pick;
      return;
    }
    for (std::size_t c = 0; c < cand[r].size(); ++c) {
      const auto links = path_links(topo, cand[r][c]);
      bool fits = true;
      for (int e : links) fits = fits && free[e] > 0;
      if (!fits) continue;
      for (int e : links) --free[e];
      pick[r] = static_cast<int>(c);
      dfs(r + 1, hops + static_cast<int>(links.size()));
      for (int e : links) ++free[e];
    }
  };
  dfs(0, 0);
  if (!best.found) throw std::runtime_error("oracle: no feasible lightpath routing");
  std::map<int, Path> out;
  for (std::size_t k = 0; k < reqs.size(); ++k) out[reqs[k].label] = cand[k][best_pick[k]];
  return out;
}

// ---- LSP-layer design ----

struct LogicalSpec {
  bool protection = false;
  bool joint = false;
  std::vector<OLsp> lsps;                    // sorted by id
  std::map<int, std::set<NodeId>> excluded;  // routers to avoid
  std::map<int, std::set<LightpathKey>> banned;
  std::map<int, Exclusion> carried;          // joint protection only
  std::vector<int> interfaces;
  std::vector<int> wavelengths;
  std::vector<Grouping> forbidden;
};

struct LogicalResult {
  std::vector<LightpathKey> lightpaths;
  std::map<int, LogicalRoute> routes;
  std::map<LightpathKey, Path> fiber;
};

LogicalResult enumerate_logical(const Instance& inst, const LogicalSpec& spec) {
  const auto& topo = inst.topology;
  const int n = topo.node_count();
  const int Q = inst.params.max_parallel;
  const std::int64_t C = inst.params.capacity.tenths();
  const UnitCosts& uc = inst.costs;

  // Candidate logical routes per LSP.
  std::vector<std::vector<LogicalRoute>> cand(spec.lsps.size());
  for (std::size_t k = 0; k < spec.lsps.size(); ++k) {
    const OLsp& l = spec.lsps[k];
    const std::set<NodeId> none;
    const auto& ex = spec.excluded.count(l.id) ? spec.excluded.at(l.id) : none;
    const std::set<LightpathKey> nob;
    const auto& ban = spec.banned.count(l.id) ? spec.banned.at(l.id) : nob;
    std::vector<bool> on(n, false);
    LogicalRoute cur;
    std::function<void(NodeId)> dfs = [&](NodeId v) {
      if (v == l.d) {
        cand[k].push_back(cur);
        return;
      }
      for (NodeId w = 0; w < n; ++w) {
        if (on[w] || ex.count(w)) continue;
        for (int q = 1; q <= Q; ++q) {
          if (ban.count(LightpathKey::of(v, w, q))) continue;
          on[w] = true;
          cur.hops.push_back({v, w, q});
          dfs(w);
          cur.hops.pop_back();
          on[w] = false;
        }
      }
    };
    on[l.s] = true;
    dfs(l.s);
    std::stable_sort(cand[k].begin(), cand[k].end(),
                     [](const auto& a, const auto& b) { return a.hops.size() < b.hops.size(); });
    if (cand[k].empty()) throw std::runtime_error("oracle: LSP " + std::to_string(l.id) + " has no route");
  }

  Best best;
  LogicalResult best_result;
  std::map<LightpathKey, std::int64_t> load;
  std::map<LightpathKey, std::set<int>> riders;
  std::vector<int> deg(n, 0);
  std::vector<int> pick(spec.lsps.size());

  auto min_fiber = [&](const LightpathKey& k) { return spec.joint ? hop_distance(topo, k.i, k.j) : 0; };

  auto leaf = [&](double logical_cost) {
    for (const auto& g : spec.forbidden)
      for (int q = 1; q <= Q; ++q) {
        auto it = riders.find(LightpathKey::of(g.i, g.j, q));
        if (it == riders.end()) continue;
        bool all = true;
        for (int id : g.lsps) all = all && it->second.count(id);
        if (all) return;
      }
    std::vector<One> base;
    std::vector<LightpathKey> keys;
    for (const auto& [k, l] : load) {
      keys.push_back(k);
      base.push_back({0, k.i, k.j, k.q, 0, 0, 0});
    }
    for (std::size_t k = 0; k < spec.lsps.size(); ++k)
      for (const auto& h : cand[k][pick[k]].hops) base.push_back({1, spec.lsps[k].id, h.from, h.to, h.q, 0, 0});
    if (!spec.joint) {
      if (best.offer(logical_cost, base)) {
        best_result = {};
        best_result.lightpaths = keys;
        for (std::size_t k = 0; k < spec.lsps.size(); ++k) best_result.routes[spec.lsps[k].id] = cand[k][pick[k]];
      }
      return;
    }
    // Fiber routes of the opened lightpaths.
    std::vector<std::vector<Path>> fc(keys.size());
    std::vector<int> rest(keys.size() + 1, 0);
    for (std::size_t a = 0; a < keys.size(); ++a) {
      Exclusion ex;
      for (int id : riders[keys[a]])
        if (auto it = spec.carried.find(id); it != spec.carried.end()) ex.merge(it->second);
      ex.nodes.erase(keys[a].i);
      ex.nodes.erase(keys[a].j);
      fiber_paths(topo, keys[a].i, keys[a].j, ex, fc[a]);
      if (fc[a].empty()) return;
    }
    for (std::size_t a = keys.size(); a-- > 0;) rest[a] = rest[a + 1] + static_cast<int>(fc[a].front().size()) - 1;
    std::vector<int> free = spec.wavelengths;
    std::vector<int> fp(keys.size());
    std::function<void(std::size_t, int)> dfs = [&](std::size_t a, int hops) {
      if (best.prune(logical_cost + uc.wavelength * (hops + rest[a]))) return;
      if (a == keys.size()) {
        std::vector<One> ones = base;
        for (std::size_t b = 0; b < keys.size(); ++b) {
          const Path& p = fc[b][fp[b]];
          for (std::size_t s = 1; s < p.size(); ++s)
            ones.push_back({2, keys[b].i, keys[b].j, keys[b].q, p[s - 1], p[s], 0});
        }
        if (best.offer(logical_cost + uc.wavelength * hops, std::move(ones))) {
          best_result = {};
          best_result.lightpaths = keys;
          for (std::size_t k = 0; k < spec.lsps.size(); ++k) best_result.routes[spec.lsps[k].id] = cand[k][pick[k]];
          for (std::size_t b = 0; b < keys.size(); ++b) best_result.fiber[keys[b]] = fc[b][fp[b]];
        }
        return;
      }
      for (std::size_t c = 0; c < fc[a].size(); ++c) {
        const auto links = path_links(topo, fc[a][c]);
        bool fits = true;
        for (int e : links) fits = fits && free[e] > 0;
        if (!fits) continue;
        for (int e : links) --free[e];
        fp[a] = static_cast<int>(c);
        dfs(a + 1, hops + static_cast<int>(links.size()));
        for (int e : links) ++free[e];
      }
    };
    dfs(0, 0);
  };

  std::function<void(std::size_t, double, int)> dfs = [&](std::size_t k, double partial, int fiber_lb) {
    if (best.prune(partial + uc.wavelength * fiber_lb)) return;
    if (k == spec.lsps.size()) {
      leaf(partial);
      return;
    }
    const OLsp& l = spec.lsps[k];
    for (std::size_t c = 0; c < cand[k].size(); ++c) {
      const LogicalRoute& r = cand[k][c];
      std::vector<LightpathKey> opened;
      bool ok = true;
      for (const auto& h : r.hops) {
        const LightpathKey key = h.key();
        auto it = load.find(key);
        if (it == load.end()) {
          if (deg[key.i] + 1 > spec.interfaces[key.i] || deg[key.j] + 1 > spec.interfaces[key.j]) {
            ok = false;
            break;
          }
          ++deg[key.i];
          ++deg[key.j];
          load[key] = 0;
          opened.push_back(key);
        }
        if (load[key] + l.b > C) {
          ok = false;
          break;
        }
      }
      if (ok) {
        int lb = fiber_lb;
        for (const auto& key : opened) lb += min_fiber(key);
        for (const auto& h : r.hops) {
          load[h.key()] += l.b;
          riders[h.key()].insert(l.id);
        }
        pick[k] = static_cast<int>(c);
        const double add = uc.lightpath * opened.size() +
                           uc.transit_per_gbps * l.gbps * (static_cast<double>(r.hops.size()) - 1.0);
        dfs(k + 1, partial + add, lb);
        for (const auto& h : r.hops) {
          load[h.key()] -= l.b;
          riders[h.key()].erase(l.id);
          if (riders[h.key()].empty()) riders.erase(h.key());
        }
      }
      for (const auto& key : opened) {
        load.erase(key);
        --deg[key.i];
        --deg[key.j];
      }
    }
  };
  dfs(0, 0.0, 0);
  if (!best.found) throw std::runtime_error("oracle: no feasible LSP-layer design");
  return best_result;
}

// ---- pipeline ----

struct Oracle {
  const Instance& inst;
  SurvivabilityMode mode;
  Approach approach;
  std::vector<Lightpath> lps;
  std::vector<Grouping> working_forbidden;
  int retries = 0;
  std::map<int, LogicalRoute> working, protection;
  int T;

  Oracle(const Instance& i, SurvivabilityMode m, Approach a) : inst(i), mode(m), approach(a) {
    T = inst.params.max_interfaces > 0
            ? inst.params.max_interfaces
            : SystemParams::default_interfaces(inst.topology.node_count(), inst.params.max_parallel);
  }

  const Lightpath* find(const LightpathKey& k, LpStatus st) const {
    for (const auto& lp : lps)
      if (lp.key == k && lp.status == st) return &lp;
    return nullptr;
  }
  void sort_lps() {
    std::stable_sort(lps.begin(), lps.end(), [](const Lightpath& a, const Lightpath& b) {
      if (a.status != b.status) return a.status == LpStatus::kWorking;
      return a.key < b.key;
    });
  }
  std::vector<int> interfaces_left() const {
    std::vector<int> left(inst.topology.node_count(), T);
    for (const auto& lp : lps) {
      --left[lp.key.i];
      --left[lp.key.j];
    }
    return left;
  }
  std::vector<int> free_wavelengths(bool optical_protection) const {
    const auto& topo = inst.topology;
    std::vector<int> w1(topo.link_count(), 0), w2(topo.link_count(), 0), s(topo.link_count(), 0);
    for (const auto& lp : lps) {
      if (lp.route.nodes.size() >= 2)
        for (int e : path_links(topo, lp.route.nodes)) (lp.status == LpStatus::kWorking ? w1 : w2)[e]++;
      if (lp.protection)
        for (int e : path_links(topo, lp.protection->nodes)) s[e]++;
    }
    std::vector<int> out;
    for (int e = 0; e < topo.link_count(); ++e) {
      int used = w1[e] + w2[e] + s[e];
      if (mode == SurvivabilityMode::kInterlayerBrs) used = w1[e] + (optical_protection ? s[e] : w2[e] + s[e]);
      out.push_back(inst.params.wavelengths - used);
    }
    return out;
  }
  std::vector<OLsp> olsps(const std::vector<int>& ids) const {
    std::vector<OLsp> out;
    for (const auto& l : inst.lsps)
      if (std::find(ids.begin(), ids.end(), l.id) != ids.end())
        out.push_back({l.id, l.source, l.destination, l.bandwidth.tenths(), l.bandwidth.gbps()});
    std::sort(out.begin(), out.end(), [](const OLsp& a, const OLsp& b) { return a.id < b.id; });
    return out;
  }

  void absorb(const LogicalResult& r, LpStatus st) {
    for (const auto& k : r.lightpaths) {
      Lightpath lp{k, st, {}, std::nullopt};
      if (auto it = r.fiber.find(k); it != r.fiber.end()) lp.route.nodes = it->second;
      lps.push_back(lp);
    }
    sort_lps();
    (st == LpStatus::kWorking ? working : protection) = r.routes;
  }

  void route_lightpaths(LpStatus st) {
    std::vector<RouteReq> reqs;
    for (std::size_t i = 0; i < lps.size(); ++i)
      if (lps[i].status == st) reqs.push_back({static_cast<int>(i), lps[i].key.i, lps[i].key.j, {}});
    if (reqs.empty()) return;
    if (st == LpStatus::kProtection)
      for (auto& r : reqs) r.ex = pbeta_ex(lps[r.label].key);
    auto routes = enumerate_routing(inst.topology, reqs, free_wavelengths(false), inst.costs.wavelength);
    for (const auto& [label, p] : routes) lps[label].route.nodes = p;
  }

  // ---- exclusion rules ----
  std::vector<int> protected_ids() const {
    std::vector<int> ids;
    if (mode == SurvivabilityMode::kNone) return ids;
    for (const auto& [id, r] : working)
      if (mode == SurvivabilityMode::kSingleLayer || r.hops.size() > 1) ids.push_back(id);
    return ids;
  }
  bool physical_rules() const {
    return mode == SurvivabilityMode::kSingleLayer || mode == SurvivabilityMode::kSpareUnprotected ||
           mode == SurvivabilityMode::kInterlayerBrs;
  }
  Exclusion carried(int id) const {
    Exclusion ex;
    if (!physical_rules()) return ex;
    const LogicalRoute& r = working.at(id);
    for (const auto& h : r.hops) {
      const Lightpath* lp = find(h.key(), LpStatus::kWorking);
      ex.nodes.insert(lp->route.nodes.begin(), lp->route.nodes.end());
      if (mode == SurvivabilityMode::kSingleLayer)
        for (int e : path_links(inst.topology, lp->route.nodes)) ex.links.insert(e);
    }
    ex.nodes.erase(r.hops.front().from);
    ex.nodes.erase(r.hops.back().to);
    return ex;
  }
  Exclusion pbeta_ex(const LightpathKey& k) const {
    Exclusion ex;
    for (const auto& [id, r] : protection)
      for (const auto& h : r.hops)
        if (h.key() == k) {
          ex.merge(carried(id));
          break;
        }
    ex.nodes.erase(k.i);
    ex.nodes.erase(k.j);
    return ex;
  }

  LogicalSpec protection_spec(const std::vector<Grouping>& forbidden) const {
    LogicalSpec spec;
    spec.protection = true;
    spec.joint = approach == Approach::kIntegrated;
    spec.lsps = olsps(protected_ids());
    for (const auto& l : spec.lsps) {
      const LogicalRoute& w = working.at(l.id);
      auto& ex = spec.excluded[l.id];
      for (std::size_t h = 1; h < w.hops.size(); ++h) ex.insert(w.hops[h].from);
      Exclusion c = carried(l.id);
      ex.insert(c.nodes.begin(), c.nodes.end());
      for (const auto& h : w.hops) spec.banned[l.id].insert(h.key());
      if (spec.joint) spec.carried[l.id] = c;
    }
    spec.interfaces = interfaces_left();
    spec.wavelengths = free_wavelengths(false);
    spec.forbidden = forbidden;
    return spec;
  }

  static bool connected(const PhysicalTopology& topo, NodeId a, NodeId b, const Exclusion& ex) {
    std::vector<Path> paths;
    // Any path suffices; reuse the enumerator on a copy limited by BFS.
    std::vector<bool> seen(topo.node_count(), false);
    std::deque<NodeId> q{a};
    seen[a] = true;
    while (!q.empty()) {
      NodeId v = q.front();
      q.pop_front();
      if (v == b) return true;
      for (NodeId w : topo.neighbors(v)) {
        if (seen[w] || (w != b && ex.nodes.count(w)) || ex.links.count(*topo.link_index(v, w))) continue;
        seen[w] = true;
        q.push_back(w);
      }
    }
    return false;
  }

  void protection_phases() {
    std::vector<Grouping> forbidden;
    for (;;) {
      std::erase_if(lps, [](const Lightpath& lp) { return lp.status == LpStatus::kProtection; });
      protection.clear();
      LogicalSpec spec = protection_spec(forbidden);
      if (spec.lsps.empty()) return;
      absorb(enumerate_logical(inst, spec), LpStatus::kProtection);
      if (approach == Approach::kIntegrated) return;
      bool conflict = false;
      for (const auto& lp : lps) {
        if (lp.status != LpStatus::kProtection) continue;
        if (connected(inst.topology, lp.key.i, lp.key.j, pbeta_ex(lp.key))) continue;
        Grouping g{lp.key.i, lp.key.j, {}};
        for (const auto& [id, r] : protection)
          for (const auto& h : r.hops)
            if (h.key() == lp.key) g.lsps.insert(id);
        forbidden.push_back(g);
        conflict = true;
        break;
      }
      if (!conflict) break;
      if (++retries > 3) throw std::runtime_error("oracle: exclusion conflicts persist after 3 retries");
    }
    route_lightpaths(LpStatus::kProtection);
  }

  // Returns false after queueing a working-design retry.
  bool optical_protection() {
    const auto& topo = inst.topology;
    std::vector<RouteReq> reqs;
    for (std::size_t i = 0; i < lps.size(); ++i) {
      const Lightpath& lp = lps[i];
      if (lp.status == LpStatus::kProtection && mode != SurvivabilityMode::kDoubleProtection) continue;
      RouteReq r{static_cast<int>(i), lp.key.i, lp.key.j, {}};
      const auto& nodes = lp.route.nodes;
      for (std::size_t k = 1; k + 1 < nodes.size(); ++k) r.ex.nodes.insert(nodes[k]);
      if (mode == SurvivabilityMode::kInterlayerBrs && lp.status == LpStatus::kWorking) {
        std::set<NodeId> oxc(nodes.begin() + 1, nodes.end() - 1);
        std::set<int> multi_on_lp;
        bool single_on_lp = false;
        std::set<int> claim;
        for (const auto& [id, w] : working) {
          bool on = false;
          for (const auto& h : w.hops) on = on || h.key() == lp.key;
          if (on) {
            if (w.hops.size() == 1) single_on_lp = true;
            else multi_on_lp.insert(id);
          }
          for (std::size_t h = 1; h < w.hops.size(); ++h)
            if (oxc.count(w.hops[h].from)) claim.insert(id);
        }
        auto claim_links = [&](const std::set<int>& ids, Exclusion& ex) {
          for (int id : ids) {
            auto it = protection.find(id);
            if (it == protection.end()) continue;
            for (const auto& h : it->second.hops)
              if (const Lightpath* p = find(h.key(), LpStatus::kProtection))
                for (int e : path_links(topo, p->route.nodes)) ex.links.insert(e);
          }
          for (int e : path_links(topo, nodes)) ex.links.insert(e);
        };
        Exclusion partial = r.ex;
        claim_links(claim, partial);
        if (single_on_lp) claim.insert(multi_on_lp.begin(), multi_on_lp.end());
        Exclusion test = r.ex;
        claim_links(claim, test);
        if (!connected(topo, lp.key.i, lp.key.j, test)) {
          if (single_on_lp && !multi_on_lp.empty() && retries < 3 &&
              connected(topo, lp.key.i, lp.key.j, partial)) {
            ++retries;
            Grouping g{lp.key.i, lp.key.j, {}};
            for (const auto& [id, w] : working)
              for (const auto& h : w.hops)
                if (h.key() == lp.key) g.lsps.insert(id);
            working_forbidden.push_back(g);
            return false;
          }
        } else {
          for (int e : test.links) r.ex.links.insert(e);
        }
      }
      for (int e : path_links(topo, nodes)) r.ex.links.insert(e);
      reqs.push_back(std::move(r));
    }
    if (reqs.empty()) return true;
    auto routes = enumerate_routing(topo, reqs, free_wavelengths(true), inst.costs.wavelength);
    for (const auto& [label, p] : routes) lps[label].protection = PhysicalPath{p};
    return true;
  }

  void run() {
    while (!attempt()) {
      lps.clear();
      working.clear();
      protection.clear();
    }
  }

  bool attempt() {
    LogicalSpec ws;
    ws.forbidden = working_forbidden;
    ws.joint = approach == Approach::kIntegrated;
    std::vector<int> all;
    for (const auto& l : inst.lsps) all.push_back(l.id);
    ws.lsps = olsps(all);
    ws.interfaces = interfaces_left();
    ws.wavelengths = free_wavelengths(false);
    absorb(enumerate_logical(inst, ws), LpStatus::kWorking);
    if (approach == Approach::kSequential) route_lightpaths(LpStatus::kWorking);
    if (mode != SurvivabilityMode::kNone) protection_phases();
    if (is_multilayer(mode)) return optical_protection();
    return true;
  }

  double cost() const {
    const auto& topo = inst.topology;
    std::vector<int> w1(topo.link_count(), 0), w2(topo.link_count(), 0), s(topo.link_count(), 0);
    for (const auto& lp : lps) {
      for (int e : path_links(topo, lp.route.nodes)) (lp.status == LpStatus::kWorking ? w1 : w2)[e]++;
      if (lp.protection)
        for (int e : path_links(topo, lp.protection->nodes)) s[e]++;
    }
    int wl = 0;
    for (int e = 0; e < topo.link_count(); ++e)
      wl += mode == SurvivabilityMode::kInterlayerBrs ? w1[e] + std::max(w2[e], s[e]) : w1[e] + w2[e] + s[e];
    double transit = 0.0;
    for (const auto* routes : {&working, &protection})
      for (const auto& [id, r] : *routes)
        for (const auto& l : inst.lsps)
          if (l.id == id) transit += l.bandwidth.gbps() * (static_cast<double>(r.hops.size()) - 1.0);
    return inst.costs.lightpath * static_cast<double>(lps.size()) + inst.costs.wavelength * wl +
           inst.costs.transit_per_gbps * transit;
  }
};

}  // namespace

OracleResult brute_force_optimum(const Instance& instance, SurvivabilityMode mode, Approach approach) {
  if (instance.topology.node_count() > 5 || instance.lsps.size() > 3 || instance.params.max_parallel > 2) {
    throw std::invalid_argument("brute force is limited to N <= 5, K <= 3, Q <= 2");
  }
  Oracle o(instance, mode, approach);
  o.run();
  OracleResult out;
  out.cost = o.cost();
  out.config.instance = instance;
  out.config.mode = mode;
  out.config.approach = approach;
  out.config.lightpaths = o.lps;
  out.config.working = o.working;
  out.config.protection = o.protection;
  return out;
}

}  // namespace otnplan
