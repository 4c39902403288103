#include "otnplan/formulation.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace otnplan {

using milp::Relation;
using milp::Term;

namespace {

std::string join(const char* prefix, std::initializer_list<int> parts) {
  std::string s = prefix;
  for (int p : parts) {
    s += '_';
    s += std::to_string(p);
  }
  return s;
}

std::vector<LightpathKey> all_keys(int n, int max_parallel) {
  std::vector<LightpathKey> keys;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      for (int q = 1; q <= max_parallel; ++q) keys.push_back({i, j, q});
  return keys;
}

// Directed fiber arcs in (m, n) order.
std::vector<std::pair<NodeId, NodeId>> fiber_arcs(const PhysicalTopology& topo) {
  std::vector<std::pair<NodeId, NodeId>> arcs;
  for (NodeId m = 0; m < topo.node_count(); ++m)
    for (NodeId n : topo.neighbors(m)) arcs.emplace_back(m, n);
  std::sort(arcs.begin(), arcs.end());
  return arcs;
}

const LspDemand& find_lsp(const Instance& inst, int id) {
  for (const auto& l : inst.lsps)
    if (l.id == id) return l;
  throw std::invalid_argument("unknown LSP id " + std::to_string(id));
}

}  // namespace

PhaseModel build_logical_design(const LogicalPhaseInput& in) {
  if (in.instance == nullptr) throw std::invalid_argument("logical phase without instance");
  const Instance& inst = *in.instance;
  const int n = inst.topology.node_count();
  const int Q = inst.params.max_parallel;
  const double cap = inst.params.capacity.gbps();
  const bool prot = in.status == LpStatus::kProtection;
  const UnitCosts& uc = inst.costs;

  std::vector<int> ids = in.lsps;
  std::sort(ids.begin(), ids.end());
  std::vector<const LspDemand*> lsps;
  for (int id : ids) {
    const LspDemand& l = find_lsp(inst, id);
    if (l.bandwidth > inst.params.capacity) {
      throw std::invalid_argument("LSP " + std::to_string(id) +
                                  " exceeds the lightpath capacity; split demands first");
    }
    lsps.push_back(&l);
  }

  PhaseModel out;
  milp::Model& m = out.model;
  auto& beta = prot ? out.vars.pbeta : out.vars.wbeta;
  auto& delta = prot ? out.vars.pdelta : out.vars.wdelta;
  const char* bname = prot ? "pbeta" : "wbeta";
  const char* dname = prot ? "pdelta" : "wdelta";

  const auto keys = all_keys(n, Q);
  for (const auto& k : keys) beta[k] = m.add_binary(join(bname, {k.i, k.j, k.q}), uc.lightpath);

  double offset = 0.0;
  for (const LspDemand* l : lsps) {
    const double b = l->bandwidth.gbps();
    offset -= uc.transit_per_gbps * b;
    const Exclusion* ex = nullptr;
    if (auto it = in.lsp_exclusions.find(l->id); prot && it != in.lsp_exclusions.end()) ex = &it->second;
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = 0; j < n; ++j) {
        if (i == j) continue;
        const bool blocked = ex && (ex->nodes.count(i) || ex->nodes.count(j));
        for (int q = 1; q <= Q; ++q) {
          int v = m.add_variable(join(dname, {l->id, i, j, q}), milp::VarKind::kBinary, 0.0,
                                 blocked ? 0.0 : 1.0, uc.transit_per_gbps * b);
          delta[{l->id, i, j, q}] = v;
        }
      }
    }
  }
  m.set_objective_offset(offset);

  auto& joint = prot ? out.vars.pblam_joint : out.vars.wlam_joint;
  const auto arcs = fiber_arcs(inst.topology);
  if (in.joint) {
    const char* lname = prot ? "pblam" : "wlam";
    for (const auto& k : keys)
      for (const auto& [a, b] : arcs)
        joint[{k.i, k.j, k.q, a, b}] = m.add_binary(join(lname, {k.i, k.j, k.q, a, b}), uc.wavelength);
  }

  // Interfaces per router.
  for (NodeId i = 0; i < n; ++i) {
    std::vector<Term> t;
    for (const auto& k : keys)
      if (k.i == i || k.j == i) t.push_back({beta[k], 1.0});
    const int limit = in.residual_interfaces.empty() ? inst.params.max_interfaces
                                                     : in.residual_interfaces.at(i);
    m.add_constraint(join("interfaces__", {i}), "interfaces", std::move(t), Relation::kLessEqual, limit);
  }

  // Flow conservation of every LSP over logical arcs.
  const char* flow_family = prot ? "flow_protection" : "flow_working";
  for (const LspDemand* l : lsps) {
    const Exclusion* ex = nullptr;
    if (auto it = in.lsp_exclusions.find(l->id); prot && it != in.lsp_exclusions.end()) ex = &it->second;
    for (NodeId i = 0; i < n; ++i) {
      if (ex && ex->nodes.count(i)) continue;
      std::vector<Term> t;
      for (NodeId j = 0; j < n; ++j) {
        if (j == i) continue;
        for (int q = 1; q <= Q; ++q) {
          t.push_back({delta[{l->id, i, j, q}], 1.0});
          t.push_back({delta[{l->id, j, i, q}], -1.0});
        }
      }
      const double rhs = i == l->source ? 1.0 : i == l->destination ? -1.0 : 0.0;
      m.add_constraint(std::string(flow_family) + "__" + std::to_string(l->id) + "_" + std::to_string(i),
                       flow_family, std::move(t), Relation::kEqual, rhs);
    }
  }

  // A protection LSP may not reuse any (i, j, q) index its working LSP uses.
  if (prot) {
    for (const LspDemand* l : lsps) {
      auto it = in.working_routes.find(l->id);
      if (it == in.working_routes.end()) continue;
      for (const auto& hop : it->second.hops) {
        const LightpathKey k = hop.key();
        if (k.q > Q) continue;
        m.add_constraint(join("lsp_disjoint__", {l->id, k.i, k.j, k.q}), "lsp_disjoint",
                         {{delta[{l->id, k.i, k.j, k.q}], 1.0}, {delta[{l->id, k.j, k.i, k.q}], 1.0}},
                         Relation::kLessEqual, 0.0);
      }
    }
  }

  // Lightpath capacity.
  const char* cap_family = prot ? "capacity_protection" : "capacity_working";
  for (const auto& k : keys) {
    std::vector<Term> t;
    for (const LspDemand* l : lsps) {
      const double b = l->bandwidth.gbps();
      t.push_back({delta[{l->id, k.i, k.j, k.q}], b});
      t.push_back({delta[{l->id, k.j, k.i, k.q}], b});
    }
    t.push_back({beta[k], -cap});
    m.add_constraint(std::string(cap_family) + "__" + std::to_string(k.i) + "_" + std::to_string(k.j) +
                         "_" + std::to_string(k.q),
                     cap_family, std::move(t), Relation::kLessEqual, 0.0);
  }

  for (const auto& g : in.forbidden) {
    for (int q = 1; q <= Q; ++q) {
      std::vector<Term> t;
      for (int id : g.lsps) {
        auto a = delta.find({id, g.i, g.j, q});
        auto b = delta.find({id, g.j, g.i, q});
        if (a == delta.end() || b == delta.end()) continue;
        t.push_back({a->second, 1.0});
        t.push_back({b->second, 1.0});
      }
      if (t.empty()) continue;
      m.add_constraint("grouping__" + std::to_string(m.constraint_count()) + "_" + std::to_string(q),
                       "grouping", std::move(t), Relation::kLessEqual,
                       static_cast<double>(g.lsps.size()) - 1.0);
    }
  }

  if (in.joint) {
    const char* jflow = prot ? "lp_flow_joint_protection" : "lp_flow_joint";
    for (const auto& k : keys) {
      for (NodeId v = 0; v < n; ++v) {
        std::vector<Term> t;
        for (NodeId w : inst.topology.neighbors(v)) {
          t.push_back({joint[{k.i, k.j, k.q, v, w}], 1.0});
          t.push_back({joint[{k.i, k.j, k.q, w, v}], -1.0});
        }
        if (v == k.i) t.push_back({beta[k], -1.0});
        if (v == k.j) t.push_back({beta[k], 1.0});
        m.add_constraint(std::string(jflow) + "__" + std::to_string(k.i) + "_" + std::to_string(k.j) +
                             "_" + std::to_string(k.q) + "_" + std::to_string(v),
                         jflow, std::move(t), Relation::kEqual, 0.0);
      }
    }
    // Wavelengths per fiber.
    for (int e = 0; e < inst.topology.link_count(); ++e) {
      const Link& L = inst.topology.link(e);
      std::vector<Term> t;
      for (const auto& k : keys) {
        t.push_back({joint[{k.i, k.j, k.q, L.a, L.b}], 1.0});
        t.push_back({joint[{k.i, k.j, k.q, L.b, L.a}], 1.0});
      }
      const int limit = in.residual_wavelengths.empty() ? inst.params.wavelengths
                                                        : in.residual_wavelengths.at(e);
      m.add_constraint(join("wavelengths__", {e}), "wavelengths", std::move(t), Relation::kLessEqual,
                       limit);
    }
    // A lightpath carrying a pLSP must avoid that pLSP's fiber exclusions.
    if (prot) {
      for (const LspDemand* l : lsps) {
        auto it = in.carried_exclusions.find(l->id);
        if (it == in.carried_exclusions.end()) continue;
        for (const auto& k : keys) {
          const Term carry_a{delta[{l->id, k.i, k.j, k.q}], 1.0};
          const Term carry_b{delta[{l->id, k.j, k.i, k.q}], 1.0};
          for (NodeId v : it->second.nodes) {
            if (v == k.i || v == k.j) continue;
            std::vector<Term> t{carry_a, carry_b};
            for (NodeId w : inst.topology.neighbors(v)) t.push_back({joint[{k.i, k.j, k.q, w, v}], 1.0});
            m.add_constraint(join("carried_exclusion__", {l->id, k.i, k.j, k.q, v}), "carried_exclusion",
                             std::move(t), Relation::kLessEqual, 1.0);
          }
          for (int e : it->second.links) {
            const Link& L = inst.topology.link(e);
            m.add_constraint(join("carried_exclusion__l", {l->id, k.i, k.j, k.q, e}), "carried_exclusion",
                             {carry_a, carry_b, {joint[{k.i, k.j, k.q, L.a, L.b}], 1.0},
                              {joint[{k.i, k.j, k.q, L.b, L.a}], 1.0}},
                             Relation::kLessEqual, 1.0);
          }
        }
      }
    }
  }
  return out;
}

PhaseModel build_integrated(LogicalPhaseInput input) {
  input.joint = true;
  return build_logical_design(input);
}

PhaseModel build_lightpath_routing(const RoutingPhaseInput& in) {
  if (in.topology == nullptr) throw std::invalid_argument("routing phase without topology");
  const PhysicalTopology& topo = *in.topology;
  PhaseModel out;
  milp::Model& m = out.model;
  auto& lam = in.protection ? out.vars.plam : out.vars.wlam;
  const char* lname = in.protection ? "plam" : "wlam";
  const auto arcs = fiber_arcs(topo);

  for (const auto& r : in.lightpaths) {
    for (const auto& [a, b] : arcs) {
      const auto e = *topo.link_index(a, b);
      const bool blocked = r.exclusion.nodes.count(a) || r.exclusion.nodes.count(b) ||
                           r.exclusion.links.count(e);
      lam[{r.label, a, b}] = m.add_variable(join(lname, {r.label, a, b}), milp::VarKind::kBinary, 0.0,
                                            blocked ? 0.0 : 1.0, in.wavelength_cost);
    }
  }

  const char* flow_family = in.protection ? "lp_flow_protection" : "lp_flow_working";
  for (const auto& r : in.lightpaths) {
    for (NodeId v = 0; v < topo.node_count(); ++v) {
      if (r.exclusion.nodes.count(v)) continue;
      std::vector<Term> t;
      for (NodeId w : topo.neighbors(v)) {
        t.push_back({lam[{r.label, v, w}], 1.0});
        t.push_back({lam[{r.label, w, v}], -1.0});
      }
      const double rhs = v == r.key.i ? 1.0 : v == r.key.j ? -1.0 : 0.0;
      m.add_constraint(std::string(flow_family) + "__" + std::to_string(r.label) + "_" + std::to_string(v),
                       flow_family, std::move(t), Relation::kEqual, rhs);
    }
    if (r.protects) {
      for (int e : r.protects->links(topo)) {
        const Link& L = topo.link(e);
        m.add_constraint(join("lp_disjoint__", {r.label, e}), "lp_disjoint",
                         {{lam[{r.label, L.a, L.b}], 1.0}, {lam[{r.label, L.b, L.a}], 1.0}},
                         Relation::kLessEqual, 0.0);
      }
    }
  }

  for (int e = 0; e < topo.link_count(); ++e) {
    const Link& L = topo.link(e);
    std::vector<Term> t;
    for (const auto& r : in.lightpaths) {
      t.push_back({lam[{r.label, L.a, L.b}], 1.0});
      t.push_back({lam[{r.label, L.b, L.a}], 1.0});
    }
    if (t.empty()) continue;
    const int limit = in.residual_wavelengths.empty() ? topo.wavelengths() : in.residual_wavelengths.at(e);
    m.add_constraint(join("wavelengths__", {e}), "wavelengths", std::move(t), Relation::kLessEqual, limit);
  }
  return out;
}

namespace {

// Follows arcs with value 1 from `from` to `to`; `next(v)` lists candidate
// (successor, tag) pairs whose variable is set.
template <typename Next>
std::vector<std::pair<NodeId, int>> trace(NodeId from, NodeId to, int node_count, Next next,
                                          const std::string& what) {
  std::vector<std::pair<NodeId, int>> steps;
  std::vector<bool> seen(node_count, false);
  NodeId v = from;
  seen[v] = true;
  while (v != to) {
    auto cand = next(v);
    if (cand.empty()) throw std::runtime_error(what + ": route broken at node " + std::to_string(v));
    // Prefer an unvisited successor; zero-cost cycles may leave extra arcs.
    auto pick = std::find_if(cand.begin(), cand.end(), [&](const auto& c) { return !seen[c.first]; });
    if (pick == cand.end()) throw std::runtime_error(what + ": route loops at node " + std::to_string(v));
    steps.push_back(*pick);
    v = pick->first;
    seen[v] = true;
  }
  return steps;
}

}  // namespace

LogicalDecode decode_logical(const LogicalPhaseInput& in, const PhaseModel& phase,
                             const std::vector<double>& x) {
  const Instance& inst = *in.instance;
  const int n = inst.topology.node_count();
  const int Q = inst.params.max_parallel;
  const bool prot = in.status == LpStatus::kProtection;
  const auto& beta = prot ? phase.vars.pbeta : phase.vars.wbeta;
  const auto& delta = prot ? phase.vars.pdelta : phase.vars.wdelta;
  const auto& joint = prot ? phase.vars.pblam_joint : phase.vars.wlam_joint;
  auto on = [&](int id) { return x.at(id) > 0.5; };

  LogicalDecode out;
  for (const auto& [k, id] : beta)
    if (on(id)) out.lightpaths.push_back(k);

  std::vector<int> ids = in.lsps;
  std::sort(ids.begin(), ids.end());
  for (int id : ids) {
    const LspDemand& l = find_lsp(inst, id);
    auto steps = trace(
        l.source, l.destination, n,
        [&](NodeId v) {
          std::vector<std::pair<NodeId, int>> c;
          for (NodeId w = 0; w < n; ++w) {
            if (w == v) continue;
            for (int q = 1; q <= Q; ++q)
              if (on(delta.at({id, v, w, q}))) c.emplace_back(w, q);
          }
          return c;
        },
        "LSP " + std::to_string(id));
    LogicalRoute r;
    NodeId v = l.source;
    for (const auto& [w, q] : steps) {
      r.hops.push_back({v, w, q});
      v = w;
    }
    out.routes[id] = std::move(r);
  }

  if (!joint.empty()) {
    for (const auto& k : out.lightpaths) {
      auto steps = trace(
          k.i, k.j, n,
          [&](NodeId v) {
            std::vector<std::pair<NodeId, int>> c;
            for (NodeId w : inst.topology.neighbors(v))
              if (on(joint.at({k.i, k.j, k.q, v, w}))) c.emplace_back(w, 0);
            return c;
          },
          "lightpath " + to_string(k));
      PhysicalPath p{{k.i}};
      for (const auto& s : steps) p.nodes.push_back(s.first);
      out.lightpath_routes[k] = std::move(p);
    }
  }
  return out;
}

std::map<int, PhysicalPath> decode_routing(const RoutingPhaseInput& in, const PhaseModel& phase,
                                           const std::vector<double>& x) {
  const auto& lam = in.protection ? phase.vars.plam : phase.vars.wlam;
  std::map<int, PhysicalPath> out;
  for (const auto& r : in.lightpaths) {
    auto steps = trace(
        r.key.i, r.key.j, in.topology->node_count(),
        [&](NodeId v) {
          std::vector<std::pair<NodeId, int>> c;
          for (NodeId w : in.topology->neighbors(v))
            if (x.at(lam.at({r.label, v, w})) > 0.5) c.emplace_back(w, 0);
          return c;
        },
        "lightpath " + to_string(r.key));
    PhysicalPath p{{r.key.i}};
    for (const auto& s : steps) p.nodes.push_back(s.first);
    out[r.label] = std::move(p);
  }
  return out;
}

std::int64_t estimate_problem_size(int nodes, int lsps, int max_parallel, int links,
                                   Approach approach) {
  const std::int64_t q = max_parallel;
  const std::int64_t n2 = static_cast<std::int64_t>(nodes) * nodes;
  if (approach == Approach::kSequential) return q * n2 * lsps / 2;
  return q * n2 * lsps / 2 + q * n2 * links;
}

std::string audit_model(const milp::Model& model) {
  std::ostringstream out;
  out << "constraints\n";
  for (const auto& [family, count] : model.family_counts())
    out << "  " << (family.empty() ? "(untagged)" : family) << ' ' << count << "\n";
  std::map<std::string, int> prefixes;
  for (const auto& v : model.variables()) prefixes[v.name.substr(0, v.name.find('_'))]++;
  out << "variables\n";
  for (const auto& [p, count] : prefixes) out << "  " << p << ' ' << count << "\n";
  out << "total " << model.variable_count() << " variables, " << model.constraint_count()
      << " constraints\n";
  return out.str();
}

}  // namespace otnplan
