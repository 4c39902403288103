#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "otnplan/costs.h"
#include "otnplan/instance.h"
#include "otnplan/topology.h"
#include "otnplan/traffic.h"

namespace otnplan {
namespace {

PhysicalTopology labeled(int n, std::vector<Link> links) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return PhysicalTopology(labels, std::move(links));
}

bool mentions(const ValidationReport& r, const std::string& text) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const std::string& v) { return v.find(text) != std::string::npos; });
}

TEST(Topology, RingIsBiconnected) {
  auto r = validate_topology(labeled(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(r.biconnected);
  EXPECT_TRUE(r.violations.empty());
}

TEST(Topology, PathIsNotBiconnected) {
  auto r = validate_topology(labeled(3, {{0, 1}, {1, 2}}));
  EXPECT_FALSE(r.ok);
  EXPECT_TRUE(mentions(r, "not bi-connected"));
  EXPECT_EQ(r.articulation_nodes, std::vector<NodeId>{1});
}

TEST(Topology, ParallelLinksRejected) {
  auto r = validate_topology(labeled(3, {{0, 1}, {0, 1}, {1, 2}, {2, 0}}));
  EXPECT_FALSE(r.ok);
  EXPECT_TRUE(mentions(r, "multiple links"));
}

TEST(Topology, SelfLoopRejected) {
  auto r = validate_topology(labeled(3, {{0, 1}, {1, 2}, {2, 0}, {1, 1}}));
  EXPECT_FALSE(r.ok);
  EXPECT_TRUE(mentions(r, "self-loop"));
}

TEST(Topology, LookupHelpers) {
  auto t = labeled(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  EXPECT_EQ(t.link_index(1, 0), 0);
  EXPECT_EQ(t.link_index(3, 0), 3);
  EXPECT_FALSE(t.link_index(0, 2).has_value());
  EXPECT_EQ(t.neighbors(0), (std::vector<NodeId>{1, 3}));
  EXPECT_EQ(t.find_label("2"), 2);
  EXPECT_FALSE(t.find_label("x").has_value());
  EXPECT_THROW(labeled(2, {{0, 5}}), std::invalid_argument);
}

TEST(Connectivity, Examples) {
  std::vector<Link> ring, mesh;
  for (int i = 0; i < 12; ++i) ring.emplace_back(i, (i + 1) % 12);
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j) mesh.emplace_back(i, j);
  EXPECT_DOUBLE_EQ(average_connectivity(labeled(12, ring)), 2.0);
  EXPECT_DOUBLE_EQ(average_connectivity(labeled(12, mesh)), 11.0);
  EXPECT_DOUBLE_EQ(average_connectivity(generate_topology(12, 4, 7)), 4.0);
}

TEST(Generator, SeedSevenHasNoArticulationNodes) {
  auto t = generate_topology(12, 4, 7);
  EXPECT_EQ(t.link_count(), 24);
  EXPECT_TRUE(articulation_nodes(t).empty());
  // Exhaustive check: removing any single node leaves the rest connected.
  for (NodeId cut = 0; cut < t.node_count(); ++cut) {
    std::vector<bool> seen(t.node_count(), false);
    const NodeId start = cut == 0 ? 1 : 0;
    std::vector<NodeId> stack{start};
    seen[start] = true;
    int reached = 1;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : t.neighbors(v)) {
        if (w == cut || seen[w]) continue;
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
    EXPECT_EQ(reached, t.node_count() - 1) << "cut " << cut;
  }
}

TEST(Generator, RingAndFullMesh) {
  auto ring = generate_topology(12, 2, 3);
  EXPECT_EQ(ring.link_count(), 12);
  for (NodeId n = 0; n < 12; ++n) EXPECT_EQ(ring.neighbors(n).size(), 2u);
  EXPECT_TRUE(validate_topology(ring).ok);
  auto mesh = generate_topology(12, 11, 3);
  EXPECT_EQ(mesh.link_count(), 66);
  EXPECT_TRUE(validate_topology(mesh).ok);
}

TEST(Generator, DeterministicValidAndNested) {
  for (int n : {5, 8, 12}) {
    for (std::uint64_t seed : {1u, 2u, 99u}) {
      std::vector<Link> prev;
      for (double d = 2; d <= n - 1; d += 1) {
        auto a = generate_topology(n, d, seed);
        auto b = generate_topology(n, d, seed);
        EXPECT_EQ(a.links(), b.links());
        EXPECT_TRUE(validate_topology(a).ok);
        EXPECT_EQ(a.link_count(), static_cast<int>(std::lround(n * d / 2)));
        EXPECT_LE(std::abs(average_connectivity(a) - d), 1.0 / n + 1e-12);
        for (const Link& l : prev) EXPECT_TRUE(a.adjacent(l.a, l.b));
        prev = a.links();
      }
    }
  }
}

TEST(Generator, RejectsBadConnectivity) {
  EXPECT_THROW(generate_topology(6, 1.5, 1), std::invalid_argument);
  EXPECT_THROW(generate_topology(6, 5.5, 1), std::invalid_argument);
  EXPECT_THROW(generate_topology(2, 2, 1), std::invalid_argument);
}

TEST(Costs, CostRatioTable) {
  UnitCosts cr1 = derive_unit_costs(CostRatios::cr1(), Bandwidth::from_gbps(10));
  EXPECT_DOUBLE_EQ(cr1.lightpath, 17.0);
  EXPECT_DOUBLE_EQ(cr1.wavelength, 3.0);
  EXPECT_DOUBLE_EQ(cr1.transit_per_gbps, 0.8);
  UnitCosts cr2 = derive_unit_costs(CostRatios::cr2(), Bandwidth::from_gbps(10));
  EXPECT_DOUBLE_EQ(cr2.lightpath, 3.0);
  EXPECT_DOUBLE_EQ(cr2.wavelength, 18.0);
  EXPECT_DOUBLE_EQ(cr2.transit_per_gbps, 0.05);
  UnitCosts cr3 = derive_unit_costs(CostRatios::cr3(), Bandwidth::from_gbps(10));
  EXPECT_DOUBLE_EQ(cr3.lightpath, 18.0);
  EXPECT_DOUBLE_EQ(cr3.wavelength, 17.0);
  EXPECT_DOUBLE_EQ(cr3.transit_per_gbps, 0.1);
}

TEST(Costs, FormulasAreBitExact) {
  for (const CostRatios& r : {CostRatios::cr1(), CostRatios::cr2(), CostRatios::cr3(),
                              CostRatios{0.3, 2.7, 1.1, "custom"}}) {
    for (double c : {2.5, 10.0, 40.0}) {
      UnitCosts u = derive_unit_costs(r, Bandwidth::from_gbps(c));
      EXPECT_EQ(u.lightpath, 2 * (r.ip_port + r.oxc_port));
      EXPECT_EQ(u.wavelength, 2 * (r.oxc_port + r.transponder));
      EXPECT_EQ(u.transit_per_gbps, r.ip_port / c);
    }
  }
}

TEST(Costs, Labels) {
  EXPECT_EQ(CostRatios::from_label("cr2").label, "CR2");
  EXPECT_EQ(CostRatios::from_label("CR3").oxc_port, 8.0);
  EXPECT_THROW(CostRatios::from_label("cr9"), std::invalid_argument);
  EXPECT_THROW(derive_unit_costs(CostRatios::cr1(), Bandwidth()), std::invalid_argument);
}

std::vector<std::int64_t> split_tenths(double gbps) {
  std::vector<std::int64_t> out;
  for (const auto& l : split_demands({{0, 1, Bandwidth::from_gbps(gbps)}}, Bandwidth::from_gbps(10)))
    out.push_back(l.bandwidth.tenths());
  return out;
}

TEST(Traffic, SplitExamples) {
  EXPECT_EQ(split_tenths(8), (std::vector<std::int64_t>{80}));
  EXPECT_EQ(split_tenths(15), (std::vector<std::int64_t>{75, 75}));
  EXPECT_EQ(split_tenths(30), (std::vector<std::int64_t>{100, 100, 100}));
  // Not evenly divisible in tenths: parts differ by one unit.
  EXPECT_EQ(split_tenths(10.1), (std::vector<std::int64_t>{51, 50}));
}

TEST(Traffic, SplitConservesBandwidthAndAssignsIds) {
  std::vector<Demand> d = {{0, 1, Bandwidth::from_gbps(23.3)}, {1, 2, Bandwidth::from_gbps(4)},
                           {2, 0, Bandwidth::from_gbps(40)}};
  auto lsps = split_demands(d, Bandwidth::from_gbps(10));
  ASSERT_EQ(lsps.size(), 3u + 1u + 4u);
  std::int64_t total = 0;
  for (std::size_t k = 0; k < lsps.size(); ++k) {
    EXPECT_EQ(lsps[k].id, static_cast<int>(k));
    EXPECT_LE(lsps[k].bandwidth.tenths(), 100);
    total += lsps[k].bandwidth.tenths();
  }
  EXPECT_EQ(total, 233 + 40 + 400);
  EXPECT_THROW(split_demands({{0, 0, Bandwidth::from_gbps(1)}}, Bandwidth::from_gbps(10)),
               std::invalid_argument);
  EXPECT_THROW(split_demands({{0, 1, Bandwidth()}}, Bandwidth::from_gbps(10)), std::invalid_argument);
}

TEST(Traffic, BandwidthRounding) {
  EXPECT_EQ(Bandwidth::from_gbps(2.54).tenths(), 25);
  EXPECT_EQ(Bandwidth::from_gbps(2.55).tenths(), 26);
  EXPECT_DOUBLE_EQ(Bandwidth::from_tenths(75).gbps(), 7.5);
}

TEST(InstanceIo, BundledInstance) {
  Instance inst = load_instance(std::string(OTNPLAN_TEST_DATA_DIR) + "/nationwide12.json");
  EXPECT_EQ(inst.topology.node_count(), 12);
  EXPECT_EQ(inst.topology.link_count(), 24);
  EXPECT_EQ(inst.lsps.size(), 126u);
  EXPECT_TRUE(validate_topology(inst.topology).ok);
  EXPECT_EQ(inst.params.max_parallel, 2);
  EXPECT_EQ(inst.params.max_interfaces, 44);
  EXPECT_DOUBLE_EQ(inst.costs.lightpath, 17.0);
  EXPECT_TRUE(check_instance(inst).empty());
}

TEST(InstanceIo, DefaultsAndRoundTrip) {
  const std::string text = R"({"nodes": ["a", "b", "c"], "links": [["a","b"],["b","c"],["c","a"]],
                              "demands": [{"s": "a", "d": "c", "b": 12}]})";
  Instance inst = parse_instance(text);
  EXPECT_EQ(inst.params.max_parallel, 2);
  EXPECT_EQ(inst.params.max_interfaces, 8);
  EXPECT_EQ(inst.params.wavelengths, 32);
  EXPECT_EQ(inst.ratios.label, "CR1");
  ASSERT_EQ(inst.lsps.size(), 2u);
  EXPECT_EQ(inst.lsps[0].bandwidth.tenths(), 60);

  Instance again = parse_instance(instance_to_json(inst, {{0, 2, Bandwidth::from_gbps(12)}}));
  EXPECT_EQ(again.topology.links(), inst.topology.links());
  EXPECT_EQ(again.topology.labels(), inst.topology.labels());
  EXPECT_EQ(again.lsps.size(), 2u);
  EXPECT_EQ(again.params.max_interfaces, 8);
}

TEST(InstanceIo, CustomCostRatio) {
  Instance inst = parse_instance(R"({"nodes": [1,2,3], "links": [[1,2],[2,3],[1,3]],
      "cost_ratio": {"c_TR": 1, "c_P_IP": 2, "c_P_OXC": 3}})");
  EXPECT_DOUBLE_EQ(inst.costs.lightpath, 10.0);
  EXPECT_DOUBLE_EQ(inst.costs.wavelength, 8.0);
  EXPECT_DOUBLE_EQ(inst.costs.transit_per_gbps, 0.2);
}

TEST(InstanceIo, SchemaErrors) {
  EXPECT_THROW(parse_instance("{"), SchemaError);
  EXPECT_THROW(parse_instance("[]"), SchemaError);
  EXPECT_THROW(parse_instance(R"({"nodes": [1,2]})"), SchemaError);
  EXPECT_THROW(parse_instance(R"({"nodes": [1,2], "links": [[1,3]]})"), SchemaError);
  EXPECT_THROW(parse_instance(R"({"nodes": [1,2], "links": [[1]]})"), SchemaError);
  EXPECT_THROW(parse_instance(R"({"nodes": [1,2], "links": [[1,2]], "cost_ratio": "CR7"})"), SchemaError);
  EXPECT_THROW(parse_instance(R"({"nodes": [1,2], "links": [[1,2]], "demands": [{"s": 1, "d": 1, "b": 3}]})"),
               SchemaError);
  EXPECT_THROW(load_instance("/nonexistent/instance.json"), SchemaError);
}

TEST(InstanceIo, CheckInstanceFindsProblems) {
  Instance inst = parse_instance(R"({"nodes": [1,2,3], "links": [[1,2],[2,3],[1,3]],
      "params": {"Q": 3}, "demands": [{"s": 1, "d": 2, "b": 5}]})");
  auto problems = check_instance(inst);
  EXPECT_NE(std::find(problems.begin(), problems.end(), "Q must be 1 or 2"), problems.end());
}

TEST(Modes, NamesRoundTrip) {
  for (auto m : {SurvivabilityMode::kNone, SurvivabilityMode::kSingleLayer, SurvivabilityMode::kDoubleProtection,
                 SurvivabilityMode::kSpareUnprotected, SurvivabilityMode::kInterlayerBrs}) {
    EXPECT_EQ(parse_mode(to_string(m)), m);
  }
  EXPECT_EQ(parse_approach("integrated"), Approach::kIntegrated);
  EXPECT_THROW(parse_mode("bogus"), std::invalid_argument);
  EXPECT_THROW(parse_approach("bogus"), std::invalid_argument);
}

}  // namespace
}  // namespace otnplan
