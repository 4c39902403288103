#pragma once

#include <string>
#include <vector>

#include "otnplan/configuration.h"

namespace otnplan {

enum class FailureKind { kLink, kNode, kInterface };
std::string to_string(FailureKind kind);

struct FailureScenario {
  FailureKind kind = FailureKind::kLink;
  int link = -1;      // kLink
  NodeId node = -1;   // kNode, and the failed endpoint for kInterface
  LightpathKey lightpath;                  // kInterface
  LpStatus status = LpStatus::kWorking;    // kInterface
};

std::string describe(const FailureScenario& scenario, const PhysicalTopology& topology);

/// One scenario per fiber link, per node, and per endpoint of every
/// lightpath carrying LSPs, in that order.
std::vector<FailureScenario> enumerate_failures(const NetworkConfiguration& config);

struct ScenarioResult {
  FailureScenario scenario;
  std::vector<int> affected;   // working LSPs whose route touches the failure
  std::vector<int> exempt;     // the failed node is an endpoint of the LSP
  std::vector<int> recovered;
  std::vector<int> failed;
  std::vector<std::string> contention;
};

struct RestorabilityReport {
  std::vector<ScenarioResult> scenarios;
  int affected = 0;
  int exempt = 0;
  int recovered = 0;
  int failed = 0;
  int contention = 0;

  /// recovered / (affected - exempt); 1 when nothing needs recovery.
  double restorability() const;
};

/// Static check of pre-planned recovery: each affected working LSP is
/// recovered when the entity responsible for it survives the failure and,
/// under interlayer BRS, the shared wavelength pool on every link can hold
/// all simultaneously activated protection lightpaths and
/// protection-carrying lightpaths.
RestorabilityReport check_restorability(const NetworkConfiguration& config,
                                        const std::vector<FailureScenario>& scenarios);

/// Line-oriented text: one record per scenario, then a summary line.
std::string restorability_to_text(const RestorabilityReport& report, const PhysicalTopology& topology);

/// Protection routing rules of the configuration's mode, plus capacity
/// limits (lightpath capacity, interfaces, wavelengths). One message per
/// violation.
std::vector<std::string> check_disjointness(const NetworkConfiguration& config);

/// Oracle for small instances: the same phase sequence as the planner,
/// with every phase solved by exhaustive enumeration and equal-cost ties
/// broken towards ones on the lowest decision variables.
struct OracleResult {
  double cost = 0.0;
  NetworkConfiguration config;
};

/// Throws std::invalid_argument above N = 5, K = 3, Q = 2, and
/// std::runtime_error when a phase has no feasible solution.
OracleResult brute_force_optimum(const Instance& instance, SurvivabilityMode mode,
                                 Approach approach = Approach::kSequential);

}  // namespace otnplan
