#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "otnplan/configuration.h"

namespace otnplan {

using nlohmann::json;

namespace {

json label_json(const PhysicalTopology& topo, NodeId n) {
  const std::string& label = topo.label(n);
  if (!label.empty() && label.find_first_not_of("0123456789") == std::string::npos && label.size() < 10) {
    return std::stoll(label);
  }
  return label;
}

NodeId resolve(const PhysicalTopology& topo, const json& j) {
  std::string key;
  if (j.is_string()) key = j.get<std::string>();
  else if (j.is_number_integer()) key = std::to_string(j.get<long long>());
  else throw SchemaError("node identifiers must be strings or integers");
  auto id = topo.find_label(key);
  if (!id) throw SchemaError("unknown node '" + key + "'");
  return *id;
}

json nodes_json(const PhysicalTopology& topo, const std::vector<NodeId>& nodes) {
  json out = json::array();
  for (NodeId n : nodes) out.push_back(label_json(topo, n));
  return out;
}

std::vector<NodeId> parse_nodes(const PhysicalTopology& topo, const json& j) {
  std::vector<NodeId> out;
  for (const auto& n : j) out.push_back(resolve(topo, n));
  return out;
}

json routes_json(const PhysicalTopology& topo, const std::map<int, LogicalRoute>& routes) {
  json out = json::array();
  for (const auto& [id, r] : routes) {
    json hops = json::array();
    for (const auto& h : r.hops) hops.push_back({label_json(topo, h.from), label_json(topo, h.to), h.q});
    out.push_back({{"lsp", id}, {"hops", hops}});
  }
  return out;
}

std::map<int, LogicalRoute> parse_routes(const PhysicalTopology& topo, const json& j) {
  std::map<int, LogicalRoute> out;
  for (const auto& r : j) {
    LogicalRoute route;
    for (const auto& h : r.at("hops")) {
      if (!h.is_array() || h.size() != 3) throw SchemaError("each hop must be [from, to, q]");
      route.hops.push_back({resolve(topo, h[0]), resolve(topo, h[1]), h[2].get<int>()});
    }
    out[r.at("lsp").get<int>()] = std::move(route);
  }
  return out;
}

double finite_or(const json& j, double fallback) {
  return j.is_number() ? j.get<double>() : fallback;
}

milp::SolveStatus parse_status(const std::string& s) {
  using milp::SolveStatus;
  for (auto st : {SolveStatus::kOptimal, SolveStatus::kFeasibleWithGap, SolveStatus::kInfeasible,
                  SolveStatus::kUnbounded, SolveStatus::kTimeLimit}) {
    if (milp::to_string(st) == s) return st;
  }
  throw SchemaError("unknown solve status '" + s + "'");
}

}  // namespace

std::string configuration_to_json(const NetworkConfiguration& c) {
  const auto& topo = c.instance.topology;
  std::vector<Demand> demands;
  for (const auto& l : c.instance.lsps) demands.push_back({l.source, l.destination, l.bandwidth});

  json doc;
  doc["instance"] = json::parse(instance_to_json(c.instance, demands));
  doc["mode"] = to_string(c.mode);
  doc["approach"] = to_string(c.approach);

  doc["lightpaths"] = json::array();
  for (const auto& lp : c.lightpaths) {
    json j = {{"i", label_json(topo, lp.key.i)},
              {"j", label_json(topo, lp.key.j)},
              {"q", lp.key.q},
              {"status", lp.status == LpStatus::kWorking ? "working" : "protection"},
              {"route", nodes_json(topo, lp.route.nodes)}};
    if (lp.protection) j["protection"] = nodes_json(topo, lp.protection->nodes);
    doc["lightpaths"].push_back(std::move(j));
  }
  doc["working"] = routes_json(topo, c.working);
  doc["protection"] = routes_json(topo, c.protection);

  doc["capacity"] = json::array();
  for (const auto& [pair, counts] : pair_capacities(c)) {
    doc["capacity"].push_back({{"i", label_json(topo, pair.first)},
                               {"j", label_json(topo, pair.second)},
                               {"working", counts.first},
                               {"spare", counts.second}});
  }
  doc["transit"] = json::object();
  const auto delta = transit_traffic(c);
  for (NodeId n = 0; n < topo.node_count(); ++n) doc["transit"][topo.label(n)] = delta[n];

  const CostBreakdown cost = total_cost(c);
  doc["cost"] = {{"transit_gbps", cost.transit_gbps},
                 {"lightpaths", cost.lightpaths},
                 {"protection_lightpaths", cost.protection_lightpaths},
                 {"wavelengths", cost.wavelengths},
                 {"extra_wavelengths", cost.extra_wavelengths},
                 {"transit", cost.transit},
                 {"lightpath", cost.lightpath},
                 {"wavelength", cost.wavelength},
                 {"total", cost.total}};

  doc["phases"] = json::array();
  for (const auto& p : c.phases) {
    doc["phases"].push_back({{"name", p.name},
                             {"status", milp::to_string(p.status)},
                             {"objective", p.objective},
                             {"best_bound", p.best_bound},
                             {"gap", p.gap},
                             {"nodes", p.stats.nodes},
                             {"lp_iterations", p.stats.lp_iterations},
                             {"seconds", p.stats.seconds},
                             {"variables", p.variables},
                             {"constraints", p.constraints},
                             {"retries", p.retries},
                             {"greedy_incumbent", p.greedy_incumbent}});
  }
  return doc.dump(2);
}

NetworkConfiguration parse_configuration(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("configuration is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("instance")) throw SchemaError("configuration needs 'instance'");
    NetworkConfiguration c;
    c.instance = parse_instance(doc.at("instance").dump());
    const auto& topo = c.instance.topology;
    try {
      c.mode = parse_mode(doc.at("mode").get<std::string>());
      c.approach = parse_approach(doc.value("approach", std::string("sequential")));
    } catch (const std::invalid_argument& e) {
      throw SchemaError(e.what());
    }

    for (const auto& j : doc.value("lightpaths", json::array())) {
      Lightpath lp;
      lp.key = LightpathKey::of(resolve(topo, j.at("i")), resolve(topo, j.at("j")), j.at("q").get<int>());
      const std::string status = j.at("status").get<std::string>();
      if (status != "working" && status != "protection") throw SchemaError("bad lightpath status '" + status + "'");
      lp.status = status == "working" ? LpStatus::kWorking : LpStatus::kProtection;
      lp.route.nodes = parse_nodes(topo, j.at("route"));
      if (j.contains("protection")) lp.protection = PhysicalPath{parse_nodes(topo, j.at("protection"))};
      for (const auto* p : {&lp.route, lp.protection ? &*lp.protection : nullptr}) {
        if (p == nullptr || p->nodes.empty()) continue;
        if (p->nodes.front() != lp.key.i && p->nodes.front() != lp.key.j) {
          throw SchemaError("route of " + to_string(lp.key) + " does not start at an endpoint");
        }
        try {
          (void)p->links(topo);
        } catch (const std::invalid_argument& e) {
          throw SchemaError(e.what());
        }
      }
      c.lightpaths.push_back(std::move(lp));
    }
    c.working = parse_routes(topo, doc.value("working", json::array()));
    c.protection = parse_routes(topo, doc.value("protection", json::array()));

    for (const auto& p : doc.value("phases", json::array())) {
      PhaseReport r;
      r.name = p.at("name").get<std::string>();
      r.status = parse_status(p.at("status").get<std::string>());
      r.objective = finite_or(p.value("objective", json()), milp::kInfinity);
      r.best_bound = finite_or(p.value("best_bound", json()), -milp::kInfinity);
      r.gap = finite_or(p.value("gap", json()), milp::kInfinity);
      r.stats.nodes = p.value("nodes", 0L);
      r.stats.lp_iterations = p.value("lp_iterations", 0L);
      r.stats.seconds = p.value("seconds", 0.0);
      r.variables = p.value("variables", 0);
      r.constraints = p.value("constraints", 0);
      r.retries = p.value("retries", 0);
      r.greedy_incumbent = p.value("greedy_incumbent", false);
      c.phases.push_back(std::move(r));
    }
    return c;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed configuration: ") + e.what());
  }
}

NetworkConfiguration load_configuration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read configuration file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_configuration(buf.str());
}

}  // namespace otnplan
