#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "otnplan/instance.h"
#include "otnplan/milp.h"
#include "otnplan/routes.h"

namespace otnplan {

struct Lightpath {
  LightpathKey key;
  LpStatus status = LpStatus::kWorking;
  PhysicalPath route;
  /// Fiber route of the optical protection lightpath, when protected.
  std::optional<PhysicalPath> protection;
};

/// Solver outcome of one planning phase.
struct PhaseReport {
  std::string name;
  milp::SolveStatus status = milp::SolveStatus::kInfeasible;
  double objective = 0.0;
  double best_bound = 0.0;
  double gap = 0.0;
  milp::SolveStats stats;
  int variables = 0;
  int constraints = 0;
  int retries = 0;
  /// The incumbent came from the greedy seed and was not improved.
  bool greedy_incumbent = false;
};

struct NetworkConfiguration {
  Instance instance;
  SurvivabilityMode mode = SurvivabilityMode::kNone;
  Approach approach = Approach::kSequential;
  std::vector<Lightpath> lightpaths;
  std::map<int, LogicalRoute> working;
  std::map<int, LogicalRoute> protection;
  std::vector<PhaseReport> phases;

  const Lightpath* find(const LightpathKey& key, LpStatus status) const;
};

/// Wavelengths per fiber by role.
struct LinkLoad {
  int w1 = 0;  // lightpaths carrying working LSPs
  int w2 = 0;  // lightpaths carrying protection LSPs
  int s = 0;   // optical protection lightpaths
};

struct BrsSharing {
  /// w1 + max(s, w2) per link.
  std::vector<int> per_link;
  int extra = 0;
  double reuse = 1.0;
};

struct CostBreakdown {
  double transit_gbps = 0.0;
  int lightpaths = 0;
  int protection_lightpaths = 0;  // lightpaths carrying protection LSPs
  int wavelengths = 0;
  int extra_wavelengths = 0;      // BRS only
  double transit = 0.0;
  double lightpath = 0.0;
  double wavelength = 0.0;
  double total = 0.0;

  double optical() const { return wavelength; }
};

std::vector<LinkLoad> link_loads(const NetworkConfiguration& config);
/// Per-node transit traffic in Gbps: incoming working and protection LSP
/// traffic minus the traffic of LSPs terminating at the node.
std::vector<double> transit_traffic(const NetworkConfiguration& config);
BrsSharing apply_brs_sharing(const std::vector<LinkLoad>& loads);
/// Wavelength total under the mode's sharing rule.
int wavelength_count(const NetworkConfiguration& config);
/// Working and spare lightpath counts per unordered node pair.
std::map<std::pair<NodeId, NodeId>, std::pair<int, int>> pair_capacities(
    const NetworkConfiguration& config);

CostBreakdown total_cost(const NetworkConfiguration& config);
/// Cost of raw resource counts.
CostBreakdown total_cost(int lightpaths, int wavelengths, double transit_gbps, const UnitCosts& costs);

std::string configuration_to_json(const NetworkConfiguration& config);
/// Reads what configuration_to_json writes; throws SchemaError.
NetworkConfiguration parse_configuration(const std::string& json_text);
NetworkConfiguration load_configuration(const std::string& path);

}  // namespace otnplan
