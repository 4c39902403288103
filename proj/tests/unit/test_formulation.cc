#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <string>

#include "otnplan/exclusion.h"
#include "otnplan/formulation.h"
#include "otnplan/instance.h"

namespace otnplan {
namespace {

PhysicalTopology ring(int n) {
  std::vector<std::string> labels;
  std::vector<Link> links;
  for (int i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
    links.emplace_back(i, (i + 1) % n);
  }
  return PhysicalTopology(labels, links);
}

Instance make_instance(PhysicalTopology topo, std::vector<LspDemand> lsps, int q = 2) {
  Instance inst;
  inst.topology = std::move(topo);
  inst.lsps = std::move(lsps);
  inst.params.max_parallel = q;
  inst.params.max_interfaces = SystemParams::default_interfaces(inst.topology.node_count(), q);
  inst.refresh_costs();
  return inst;
}

LogicalPhaseInput working_input(const Instance& inst, bool joint = false) {
  LogicalPhaseInput in;
  in.instance = &inst;
  in.joint = joint;
  for (const auto& l : inst.lsps) in.lsps.push_back(l.id);
  in.residual_interfaces.assign(inst.topology.node_count(), inst.params.max_interfaces);
  in.residual_wavelengths.assign(inst.topology.link_count(), inst.params.wavelengths);
  return in;
}

milp::Solution solve(const milp::Model& m) {
  milp::MilpOptions o;
  o.gap = 0.0;
  return milp::solve_milp(m, o);
}

LspDemand lsp(int id, NodeId s, NodeId d, double gbps) { return {id, s, d, Bandwidth::from_gbps(gbps)}; }

TEST(Estimate, ClosedForms) {
  EXPECT_EQ(estimate_problem_size(12, 126, 2, 24, Approach::kSequential), 18144);
  EXPECT_EQ(estimate_problem_size(12, 126, 2, 24, Approach::kIntegrated), 25056);
  EXPECT_EQ(estimate_problem_size(12, 126, 2, 24, Approach::kIntegrated) -
                estimate_problem_size(12, 126, 2, 24, Approach::kSequential),
            2 * 24 * 144);
}

TEST(LogicalDesign, BundledInstanceVariableCounts) {
  const Instance inst = load_instance(std::string(OTNPLAN_TEST_DATA_DIR) + "/nationwide12.json");
  const int n = inst.topology.node_count();
  const int k = static_cast<int>(inst.lsps.size());
  const int q = inst.params.max_parallel;

  PhaseModel seq = build_logical_design(working_input(inst));
  EXPECT_EQ(seq.vars.wdelta.size(), static_cast<std::size_t>(q * n * (n - 1) * k));
  const double seq_est = static_cast<double>(estimate_problem_size(n, k, q, 24, Approach::kSequential));
  EXPECT_LE(seq.vars.routing_variable_count(), 2 * seq_est);
  EXPECT_GE(2 * seq.vars.routing_variable_count(), seq_est);

  PhaseModel joint = build_integrated(working_input(inst));
  EXPECT_EQ(joint.vars.wdelta.size(), seq.vars.wdelta.size());
  EXPECT_EQ(joint.vars.wlam_joint.size(), static_cast<std::size_t>(q * n * (n - 1) / 2 * 2 * 24));
  const double int_est = static_cast<double>(estimate_problem_size(n, k, q, 24, Approach::kIntegrated));
  EXPECT_LE(joint.vars.routing_variable_count(), 2 * int_est);
  EXPECT_GE(2 * joint.vars.routing_variable_count(), int_est);
}

TEST(LogicalDesign, AuditListsFamilies) {
  const Instance inst = make_instance(ring(4), {lsp(0, 0, 2, 4), lsp(1, 1, 3, 4)});
  PhaseModel m = build_logical_design(working_input(inst));
  const auto fam = m.model.family_counts();
  for (const char* f : {"interfaces", "flow_working", "capacity_working"}) {
    ASSERT_TRUE(fam.count(f)) << f;
    EXPECT_GT(fam.at(f), 0) << f;
  }
  const std::string audit = audit_model(m.model);
  EXPECT_NE(audit.find("flow_working"), std::string::npos);
  EXPECT_NE(audit.find("wdelta"), std::string::npos);
  EXPECT_TRUE(m.model.find_variable("wbeta_0_2_1").has_value());
  EXPECT_TRUE(m.model.find_variable("wdelta_1_3_2_2").has_value());

  PhaseModel j = build_integrated(working_input(inst));
  const auto jf = j.model.family_counts();
  for (const char* f : {"lp_flow_joint", "wavelengths"}) {
    ASSERT_TRUE(jf.count(f)) << f;
    EXPECT_GT(jf.at(f), 0) << f;
  }
  EXPECT_TRUE(j.model.find_variable("wlam_0_2_1_0_1").has_value());
}

TEST(LogicalDesign, CapacityForcesTwoLightpaths) {
  const Instance inst = make_instance(ring(4), {lsp(0, 0, 1, 6), lsp(1, 0, 1, 6)});
  const LogicalPhaseInput in = working_input(inst);
  PhaseModel m = build_logical_design(in);
  auto sol = solve(m.model);
  ASSERT_TRUE(sol.has_incumbent());
  LogicalDecode d = decode_logical(in, m, sol.values);
  EXPECT_GE(d.lightpaths.size(), 2u);
  // Per (i, j, q): carried bandwidth <= C.
  std::map<LightpathKey, std::int64_t> load;
  for (const auto& [id, r] : d.routes)
    for (const auto& h : r.hops) load[h.key()] += inst.lsps[id].bandwidth.tenths();
  for (const auto& [k, tenths] : load) EXPECT_LE(tenths, 100) << to_string(k);
}

TEST(LogicalDesign, InterfaceLimitMakesInfeasible) {
  const Instance inst = make_instance(PhysicalTopology({"0", "1", "2"}, {{0, 1}, {1, 2}, {0, 2}}),
                                      {lsp(0, 0, 1, 6), lsp(1, 0, 2, 6)});
  LogicalPhaseInput in = working_input(inst);
  in.residual_interfaces = {1, 1, 1};
  EXPECT_EQ(solve(build_logical_design(in).model).status, milp::SolveStatus::kInfeasible);
}

TEST(LogicalDesign, RejectsOversizedLsp) {
  const Instance inst = make_instance(ring(4), {lsp(0, 0, 1, 12)});
  EXPECT_THROW(build_logical_design(working_input(inst)), std::invalid_argument);
}

TEST(LogicalDesign, DecodedRoutesArePaths) {
  const Instance inst = make_instance(PhysicalTopology({"0", "1", "2", "3", "4"},
                                                       {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {1, 3}}),
                                      {lsp(0, 0, 2, 3), lsp(1, 0, 3, 3), lsp(2, 4, 2, 3)});
  for (bool joint : {false, true}) {
    const LogicalPhaseInput in = working_input(inst, joint);
    PhaseModel m = build_logical_design(in);
    auto sol = solve(m.model);
    ASSERT_TRUE(sol.has_incumbent());
    EXPECT_TRUE(milp::check_solution(m.model, sol.values).empty());
    LogicalDecode d = decode_logical(in, m, sol.values);
    ASSERT_EQ(d.routes.size(), 3u);
    for (const auto& [id, r] : d.routes) {
      ASSERT_FALSE(r.empty());
      EXPECT_EQ(r.hops.front().from, inst.lsps[id].source);
      EXPECT_EQ(r.hops.back().to, inst.lsps[id].destination);
      for (std::size_t h = 1; h < r.hops.size(); ++h) EXPECT_EQ(r.hops[h].from, r.hops[h - 1].to);
      auto nodes = r.nodes();
      EXPECT_EQ(std::set<NodeId>(nodes.begin(), nodes.end()).size(), nodes.size());
      for (const auto& h : r.hops)
        EXPECT_NE(std::find(d.lightpaths.begin(), d.lightpaths.end(), h.key()), d.lightpaths.end());
    }
    if (joint) {
      for (const auto& k : d.lightpaths) {
        ASSERT_TRUE(d.lightpath_routes.count(k));
        const PhysicalPath& p = d.lightpath_routes.at(k);
        EXPECT_EQ(p.nodes.front(), k.i);
        EXPECT_EQ(p.nodes.back(), k.j);
        EXPECT_NO_THROW(p.links(inst.topology));
      }
    }
  }
}

TEST(LogicalDesign, ProtectionAvoidsExcludedRouters) {
  const Instance inst = make_instance(PhysicalTopology({"0", "1", "2", "3", "4"},
                                                       {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}),
                                      {lsp(0, 0, 2, 4)});
  LogicalPhaseInput in = working_input(inst);
  in.status = LpStatus::kProtection;
  LogicalRoute w;
  w.hops = {{0, 1, 1}, {1, 2, 1}};
  in.working_routes[0] = w;
  in.lsp_exclusions[0].nodes = {1};
  PhaseModel m = build_logical_design(in);
  EXPECT_FALSE(m.vars.pdelta.empty());
  EXPECT_TRUE(m.vars.wdelta.empty());
  auto sol = solve(m.model);
  ASSERT_TRUE(sol.has_incumbent());
  LogicalDecode d = decode_logical(in, m, sol.values);
  const auto nodes = d.routes.at(0).nodes();
  EXPECT_EQ(std::count(nodes.begin(), nodes.end(), 1), 0);
  for (const auto& h : d.routes.at(0).hops) {
    EXPECT_NE(h.key(), LightpathKey::of(0, 1, 1));
    EXPECT_NE(h.key(), LightpathKey::of(1, 2, 1));
  }
}

TEST(LightpathRouting, RingShortestAndProtection) {
  const PhysicalTopology topo = ring(4);
  RoutingPhaseInput in{&topo, false, {}, std::vector<int>(4, 32), 3.0};
  in.lightpaths.push_back({0, LightpathKey::of(0, 2, 1), {}, std::nullopt});
  PhaseModel m = build_lightpath_routing(in);
  auto sol = solve(m.model);
  ASSERT_TRUE(sol.has_incumbent());
  EXPECT_DOUBLE_EQ(sol.objective, 2 * 3.0);
  const PhysicalPath working = decode_routing(in, m, sol.values).at(0);
  EXPECT_EQ(working.hop_count(), 2);

  RoutingPhaseInput prot{&topo, true, {}, std::vector<int>(4, 32), 3.0};
  Exclusion ex;
  for (NodeId v : working.transit_nodes()) ex.nodes.insert(v);
  prot.lightpaths.push_back({0, LightpathKey::of(0, 2, 1), ex, working});
  PhaseModel pm = build_lightpath_routing(prot);
  EXPECT_TRUE(pm.model.find_variable("plam_0_0_1").has_value() || pm.model.find_variable("plam_0_0_3").has_value());
  auto ps = solve(pm.model);
  ASSERT_TRUE(ps.has_incumbent());
  EXPECT_DOUBLE_EQ(ps.objective, 2 * 3.0);
  const PhysicalPath spare = decode_routing(prot, pm, ps.values).at(0);
  const auto wl = working.links(topo);
  for (int e : spare.links(topo)) EXPECT_EQ(std::count(wl.begin(), wl.end(), e), 0);
}

TEST(LightpathRouting, WavelengthLimitMakesInfeasible) {
  const PhysicalTopology topo({"0", "1", "2"}, {{0, 1}, {1, 2}, {0, 2}});
  RoutingPhaseInput in{&topo, false, {}, {1, 0, 0}, 3.0};
  in.lightpaths.push_back({0, LightpathKey::of(0, 1, 1), {}, std::nullopt});
  in.lightpaths.push_back({1, LightpathKey::of(0, 1, 2), {}, std::nullopt});
  EXPECT_EQ(solve(build_lightpath_routing(in).model).status, milp::SolveStatus::kInfeasible);
}

TEST(LpExport, PhaseModelRoundTrips) {
  const Instance inst = make_instance(ring(5), {lsp(0, 0, 2, 4), lsp(1, 1, 3, 7), lsp(2, 4, 2, 2)});
  PhaseModel m = build_integrated(working_input(inst));
  const std::string text = milp::emit_lp(m.model, "working-joint");
  milp::Model back = milp::parse_lp(text);
  EXPECT_EQ(back.variable_count(), m.model.variable_count());
  EXPECT_EQ(back.constraint_count(), m.model.constraint_count());
  EXPECT_EQ(back.family_counts(), m.model.family_counts());
  EXPECT_EQ(milp::emit_lp(back, "working-joint"), text);
  auto a = solve(m.model);
  auto b = solve(back);
  ASSERT_TRUE(a.has_incumbent());
  ASSERT_TRUE(b.has_incumbent());
  EXPECT_NEAR(a.objective, b.objective, 1e-9);
}

// ---- exclusion sets ----

NetworkConfiguration line_working(SurvivabilityMode mode) {
  // wLSP 0 -> 2 over single-hop lightpaths (0,1) and (1,2); a single-hop
  // LSP 3 -> 4; lightpath (3,4) routed over 3-5-4.
  NetworkConfiguration c;
  c.instance = make_instance(
      PhysicalTopology({"0", "1", "2", "3", "4", "5"}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {3, 5}}),
      {lsp(0, 0, 2, 5), lsp(1, 3, 4, 5)});
  c.mode = mode;
  c.lightpaths = {{LightpathKey::of(0, 1, 1), LpStatus::kWorking, PhysicalPath{{0, 1}}, std::nullopt},
                  {LightpathKey::of(1, 2, 1), LpStatus::kWorking, PhysicalPath{{1, 2}}, std::nullopt},
                  {LightpathKey::of(3, 4, 1), LpStatus::kWorking, PhysicalPath{{3, 5, 4}}, std::nullopt}};
  c.working[0].hops = {{0, 1, 1}, {1, 2, 1}};
  c.working[1].hops = {{3, 4, 1}};
  return c;
}

TEST(Exclusions, SingleLayerExcludesLogicalTransit) {
  const auto c = line_working(SurvivabilityMode::kSingleLayer);
  EXPECT_EQ(protected_lsps(c, c.mode), (std::vector<int>{0, 1}));
  const auto sets = compute_exclusion_sets(c, c.mode);
  EXPECT_TRUE(sets.lsp.at(0).nodes.count(1));
  EXPECT_FALSE(sets.lsp.at(0).nodes.count(0));
  EXPECT_FALSE(sets.lsp.at(0).nodes.count(2));
  // Single-layer carried exclusion covers the fibers of the working lightpaths.
  EXPECT_TRUE(sets.carried.at(0).nodes.count(1));
  EXPECT_TRUE(sets.carried.at(1).nodes.count(5));
  EXPECT_TRUE(sets.carried.at(1).links.count(*c.instance.topology.link_index(3, 5)));
}

TEST(Exclusions, MultilayerSkipsSingleHop) {
  for (auto mode : {SurvivabilityMode::kDoubleProtection, SurvivabilityMode::kSpareUnprotected,
                    SurvivabilityMode::kInterlayerBrs}) {
    const auto c = line_working(mode);
    EXPECT_EQ(protected_lsps(c, mode), std::vector<int>{0});
  }
  EXPECT_TRUE(protected_lsps(line_working(SurvivabilityMode::kNone), SurvivabilityMode::kNone).empty());
}

TEST(Exclusions, ProtectionLightpathAvoidsTransitOxc) {
  auto c = line_working(SurvivabilityMode::kSpareUnprotected);
  const Exclusion ex = protection_lightpath_exclusion(c, c.lightpaths[2]);
  EXPECT_EQ(ex.nodes, std::set<NodeId>{5});
  EXPECT_FALSE(ex.nodes.count(3));
  EXPECT_FALSE(ex.nodes.count(4));
}

TEST(Exclusions, SpareUnprotectedExcludesFootprint) {
  auto c = line_working(SurvivabilityMode::kSpareUnprotected);
  // Reroute lightpath (1,2) physically over 1-0-5-4-3-2 so its OXC transit
  // nodes join the pLSP exclusion.
  c.lightpaths[1].route = PhysicalPath{{1, 0, 5, 4, 3, 2}};
  const auto sets = compute_exclusion_sets(c, c.mode);
  for (NodeId v : {1, 3, 4, 5}) EXPECT_TRUE(sets.lsp.at(0).nodes.count(v)) << v;
  EXPECT_FALSE(sets.lsp.at(0).nodes.count(0));
  EXPECT_FALSE(sets.lsp.at(0).nodes.count(2));
  // Double protection relies on optical protection and keeps only routers.
  c.mode = SurvivabilityMode::kDoubleProtection;
  EXPECT_EQ(compute_exclusion_sets(c, c.mode).lsp.at(0).nodes, std::set<NodeId>{1});
}

}  // namespace
}  // namespace otnplan
