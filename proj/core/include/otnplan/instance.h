#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "otnplan/costs.h"
#include "otnplan/topology.h"
#include "otnplan/traffic.h"

namespace otnplan {

/// Which failures are covered and by which layer.
enum class SurvivabilityMode {
  kNone,
  kSingleLayer,
  kDoubleProtection,
  kSpareUnprotected,
  kInterlayerBrs,
};

enum class Approach { kSequential, kIntegrated };

std::string to_string(SurvivabilityMode mode);
std::string to_string(Approach approach);
/// Accepts the CLI spellings ("none", "single-layer", "ml-double-protection",
/// "ml-spare-unprotected", "ml-interlayer-brs"); throws std::invalid_argument.
SurvivabilityMode parse_mode(const std::string& text);
Approach parse_approach(const std::string& text);

inline bool is_multilayer(SurvivabilityMode m) {
  return m == SurvivabilityMode::kDoubleProtection || m == SurvivabilityMode::kSpareUnprotected ||
         m == SurvivabilityMode::kInterlayerBrs;
}

/// Everything a design run needs besides the mode and approach.
struct Instance {
  PhysicalTopology topology;
  std::vector<LspDemand> lsps;
  SystemParams params;
  CostRatios ratios = CostRatios::cr1();
  UnitCosts costs;

  /// Recomputes `costs` from `ratios` and the lightpath capacity.
  void refresh_costs() { costs = derive_unit_costs(ratios, params.capacity); }
};

/// Raised for malformed instance files; the CLI maps it to exit status 2.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the JSON instance format. Demands are split into LSPs with
/// split_demands(); T defaults to 2Q(N-1) when absent.
Instance parse_instance(const std::string& json_text);
Instance load_instance(const std::string& path);
std::string instance_to_json(const Instance& instance, const std::vector<Demand>& demands);

/// {"nodes": [...], "links": [[a, b], ...]} as written by gen-topology.
std::string topology_to_json(const PhysicalTopology& topology);

/// Checks the invariants an instance must satisfy before planning: valid
/// topology, LSP endpoints distinct and in range, 0 < b <= C, Q in {1, 2}.
/// Returns human-readable problems; empty when the instance is usable.
std::vector<std::string> check_instance(const Instance& instance);

}  // namespace otnplan
