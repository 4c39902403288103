#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "otnplan/instance.h"
#include "otnplan/milp.h"
#include "otnplan/routes.h"

namespace otnplan {

/// Semantic index -> model variable id. Keys:
///   beta  (i, j, q) with i < j
///   delta (lsp id, from, to, q) over directed logical arcs
///   lam   (lightpath label, m, n) over directed fiber arcs
///   joint (i, j, q, m, n) lightpath routing inside a joint model
struct DecisionVarMap {
  using DeltaKey = std::tuple<int, NodeId, NodeId, int>;
  using LamKey = std::tuple<int, NodeId, NodeId>;
  using JointKey = std::tuple<NodeId, NodeId, int, NodeId, NodeId>;

  std::map<LightpathKey, int> wbeta, pbeta;
  std::map<DeltaKey, int> wdelta, pdelta;
  std::map<LamKey, int> wlam, plam;
  /// Working-phase joint routing (wlam_i_j_q_m_n).
  std::map<JointKey, int> wlam_joint;
  /// Protection-phase joint routing of pbeta lightpaths (pblam_i_j_q_m_n).
  std::map<JointKey, int> pblam_joint;

  std::size_t routing_variable_count() const {
    return wdelta.size() + pdelta.size() + wlam_joint.size() + pblam_joint.size();
  }
};

struct PhaseModel {
  milp::Model model;
  DecisionVarMap vars;
};

/// LSP-layer design of one status: opens lightpaths and routes LSPs on
/// them. With `joint` set the same model also routes the opened
/// lightpaths over fibers.
struct LogicalPhaseInput {
  const Instance* instance = nullptr;
  LpStatus status = LpStatus::kWorking;
  /// Ids of the LSPs to route (indices into instance->lsps are looked up by id).
  std::vector<int> lsps;
  /// Protection phase: routers each pLSP must avoid.
  std::map<int, Exclusion> lsp_exclusions;
  /// Protection phase: working routes, for logical link disjointness.
  std::map<int, LogicalRoute> working_routes;
  /// Interfaces still free per node (T minus lightpaths already opened).
  std::vector<int> residual_interfaces;
  /// Wavelengths still free per link (joint models only).
  std::vector<int> residual_wavelengths;
  bool joint = false;
  /// Joint protection phase: fiber nodes/links a pbeta lightpath must avoid
  /// whenever it carries the given pLSP.
  std::map<int, Exclusion> carried_exclusions;
  /// Groupings forbidden after an exclusion conflict: the listed LSPs may
  /// not all ride one lightpath between the pair, for any q.
  struct ForbiddenGrouping {
    NodeId i = 0;
    NodeId j = 0;
    std::vector<int> lsps;
  };
  std::vector<ForbiddenGrouping> forbidden;
};

/// One lightpath to place on fibers.
struct RoutingRequest {
  /// Index used in variable names (wlam_<label>_m_n).
  int label = 0;
  LightpathKey key;
  Exclusion exclusion;
  /// For protection lightpaths: the fiber route of the protected lightpath.
  std::optional<PhysicalPath> protects;
};

struct RoutingPhaseInput {
  const PhysicalTopology* topology = nullptr;
  /// false: wlam variables (lightpaths carrying LSPs); true: plam (optical
  /// protection lightpaths).
  bool protection = false;
  std::vector<RoutingRequest> lightpaths;
  std::vector<int> residual_wavelengths;
  double wavelength_cost = 0.0;
};

/// Routing of LSPs with their lightpaths opened as a design decision.
/// Throws std::invalid_argument for LSPs above the lightpath capacity or
/// unknown ids.
PhaseModel build_logical_design(const LogicalPhaseInput& input);
/// Same model family with `joint` forced on.
PhaseModel build_integrated(LogicalPhaseInput input);
PhaseModel build_lightpath_routing(const RoutingPhaseInput& input);

struct LogicalDecode {
  std::vector<LightpathKey> lightpaths;
  std::map<int, LogicalRoute> routes;
  /// Joint models only.
  std::map<LightpathKey, PhysicalPath> lightpath_routes;
};

/// Extracts the opened lightpaths and one simple route per LSP. Throws
/// std::runtime_error when the delta values do not trace a path.
LogicalDecode decode_logical(const LogicalPhaseInput& input, const PhaseModel& phase,
                             const std::vector<double>& values);
/// Route per request label.
std::map<int, PhysicalPath> decode_routing(const RoutingPhaseInput& input, const PhaseModel& phase,
                                           const std::vector<double>& values);

/// Closed-form size estimates: q*N^2*K/2 (sequential) and q*N^2*(K/2 + E)
/// (integrated). Estimates only; builders create q*N*(N-1)*K routing
/// variables per phase.
std::int64_t estimate_problem_size(int nodes, int lsps, int max_parallel, int links,
                                   Approach approach);

/// Per-family constraint counts and per-prefix variable counts.
std::string audit_model(const milp::Model& model);

}  // namespace otnplan
