#include "otnplan/instance.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace otnplan {

using nlohmann::json;

std::string to_string(SurvivabilityMode mode) {
  switch (mode) {
    case SurvivabilityMode::kNone: return "none";
    case SurvivabilityMode::kSingleLayer: return "single-layer";
    case SurvivabilityMode::kDoubleProtection: return "ml-double-protection";
    case SurvivabilityMode::kSpareUnprotected: return "ml-spare-unprotected";
    case SurvivabilityMode::kInterlayerBrs: return "ml-interlayer-brs";
  }
  return "?";
}

std::string to_string(Approach approach) {
  return approach == Approach::kSequential ? "sequential" : "integrated";
}

SurvivabilityMode parse_mode(const std::string& text) {
  for (auto m : {SurvivabilityMode::kNone, SurvivabilityMode::kSingleLayer,
                 SurvivabilityMode::kDoubleProtection, SurvivabilityMode::kSpareUnprotected,
                 SurvivabilityMode::kInterlayerBrs}) {
    if (to_string(m) == text) return m;
  }
  throw std::invalid_argument("unknown survivability mode '" + text + "'");
}

Approach parse_approach(const std::string& text) {
  if (text == "sequential") return Approach::kSequential;
  if (text == "integrated") return Approach::kIntegrated;
  throw std::invalid_argument("unknown approach '" + text + "'");
}

namespace {

std::string node_key(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw SchemaError("node identifiers must be strings or integers");
}

NodeId resolve(const PhysicalTopology& topo, const json& j) {
  auto id = topo.find_label(node_key(j));
  if (!id) throw SchemaError("unknown node '" + node_key(j) + "'");
  return *id;
}

json label_json(const std::string& label) {
  if (!label.empty() && label.find_first_not_of("0123456789") == std::string::npos &&
      label.size() < 10) {
    return std::stoll(label);
  }
  return label;
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("instance is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw SchemaError("instance must be a JSON object");
    if (!doc.contains("nodes") || !doc.contains("links")) {
      throw SchemaError("instance needs 'nodes' and 'links'");
    }
    std::vector<std::string> labels;
    for (const auto& n : doc.at("nodes")) labels.push_back(node_key(n));

    Instance inst;
    const json params = doc.value("params", json::object());
    inst.params.capacity = Bandwidth::from_gbps(params.value("C", 10.0));
    inst.params.wavelengths = params.value("W", 32);
    inst.params.max_parallel = params.value("Q", 2);
    inst.params.max_interfaces =
        params.value("T", SystemParams::default_interfaces(static_cast<int>(labels.size()),
                                                           inst.params.max_parallel));

    PhysicalTopology probe(labels, {}, inst.params.wavelengths);
    std::vector<Link> links;
    for (const auto& l : doc.at("links")) {
      if (!l.is_array() || l.size() != 2) throw SchemaError("each link must be a [a, b] pair");
      links.emplace_back(resolve(probe, l[0]), resolve(probe, l[1]));
    }
    inst.topology = PhysicalTopology(labels, std::move(links), inst.params.wavelengths);

    if (doc.contains("cost_ratio")) {
      const json& cr = doc.at("cost_ratio");
      if (cr.is_string()) {
        try {
          inst.ratios = CostRatios::from_label(cr.get<std::string>());
        } catch (const std::invalid_argument& e) {
          throw SchemaError(e.what());
        }
      } else if (cr.is_object()) {
        inst.ratios = {cr.at("c_TR").get<double>(), cr.at("c_P_IP").get<double>(),
                       cr.at("c_P_OXC").get<double>(), "custom"};
      } else {
        throw SchemaError("cost_ratio must be a label or an object");
      }
    }
    if (inst.ratios.transponder < 0 || inst.ratios.ip_port < 0 || inst.ratios.oxc_port < 0) {
      throw SchemaError("element costs must be non-negative");
    }
    if (inst.params.capacity.tenths() <= 0) throw SchemaError("C must be > 0");

    std::vector<Demand> demands;
    for (const auto& d : doc.value("demands", json::array())) {
      Demand dem;
      dem.source = resolve(inst.topology, d.at("s"));
      dem.destination = resolve(inst.topology, d.at("d"));
      dem.bandwidth = Bandwidth::from_gbps(d.at("b").get<double>());
      demands.push_back(dem);
    }
    try {
      inst.lsps = split_demands(demands, inst.params.capacity);
    } catch (const std::invalid_argument& e) {
      throw SchemaError(e.what());
    }
    inst.refresh_costs();
    return inst;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed instance: ") + e.what());
  }
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read instance file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string topology_to_json(const PhysicalTopology& topology) {
  json doc;
  doc["nodes"] = json::array();
  for (const auto& l : topology.labels()) doc["nodes"].push_back(label_json(l));
  doc["links"] = json::array();
  for (const Link& l : topology.links()) {
    doc["links"].push_back({label_json(topology.label(l.a)), label_json(topology.label(l.b))});
  }
  return doc.dump(2);
}

std::string instance_to_json(const Instance& instance, const std::vector<Demand>& demands) {
  json doc = json::parse(topology_to_json(instance.topology));
  doc["params"] = {{"C", instance.params.capacity.gbps()},
                   {"W", instance.params.wavelengths},
                   {"Q", instance.params.max_parallel},
                   {"T", instance.params.max_interfaces}};
  if (instance.ratios.label == "custom") {
    doc["cost_ratio"] = {{"c_TR", instance.ratios.transponder},
                         {"c_P_IP", instance.ratios.ip_port},
                         {"c_P_OXC", instance.ratios.oxc_port}};
  } else {
    doc["cost_ratio"] = instance.ratios.label;
  }
  doc["demands"] = json::array();
  for (const Demand& d : demands) {
    doc["demands"].push_back({{"s", label_json(instance.topology.label(d.source))},
                              {"d", label_json(instance.topology.label(d.destination))},
                              {"b", d.bandwidth.gbps()}});
  }
  return doc.dump(2);
}

std::vector<std::string> check_instance(const Instance& instance) {
  std::vector<std::string> problems = validate_topology(instance.topology).violations;
  const int n = instance.topology.node_count();
  if (instance.params.max_parallel < 1 || instance.params.max_parallel > 2) {
    problems.push_back("Q must be 1 or 2");
  }
  if (instance.params.max_interfaces < 1) problems.push_back("T must be positive");
  if (instance.params.wavelengths < 1) problems.push_back("W must be positive");
  for (const LspDemand& lsp : instance.lsps) {
    if (lsp.source < 0 || lsp.source >= n || lsp.destination < 0 || lsp.destination >= n) {
      problems.push_back("LSP " + std::to_string(lsp.id) + " references an unknown node");
    } else if (lsp.source == lsp.destination) {
      problems.push_back("LSP " + std::to_string(lsp.id) + " has source == destination");
    }
    if (lsp.bandwidth.tenths() <= 0 || lsp.bandwidth > instance.params.capacity) {
      problems.push_back("LSP " + std::to_string(lsp.id) + " bandwidth must be in (0, C]");
    }
  }
  return problems;
}

}  // namespace otnplan
