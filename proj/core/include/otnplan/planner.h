#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "otnplan/configuration.h"
#include "otnplan/exclusion.h"
#include "otnplan/formulation.h"

namespace otnplan {

struct PlanOptions {
  /// Relative optimality gap per phase.
  double gap = 0.03;
  double time_limit_seconds = 300.0;
  /// At gap 0, break equal-cost ties towards ones on the lowest variable ids
  /// (lowest (i,j,q) first) so that later phases see a canonical input.
  bool lexicographic_ties = true;
  /// Seed every phase with a greedy incumbent.
  bool greedy_seed = true;
  /// Re-solves of the protection logical phase after an exclusion conflict.
  int max_retries = 3;
};

/// A phase could not be solved; `phase` names it.
class PlanError : public std::runtime_error {
 public:
  PlanError(std::string phase, int retries, const std::string& detail)
      : std::runtime_error(phase + ": " + detail + " (retries: " + std::to_string(retries) + ")"),
        phase_(std::move(phase)),
        retries_(retries) {}
  const std::string& phase() const { return phase_; }
  int retries() const { return retries_; }

 private:
  std::string phase_;
  int retries_;
};

/// Runs the phases of one mode/approach pipeline in order. Each phase can
/// be built, solved externally and fed back, or solved in place.
class Planner {
 public:
  Planner(const Instance& instance, SurvivabilityMode mode, Approach approach, PlanOptions options = {});
  ~Planner();
  Planner(Planner&&) noexcept;
  Planner& operator=(Planner&&) noexcept;

  /// Phase names of the pipeline, in execution order.
  std::vector<std::string> phase_names() const;
  bool done() const;
  std::string next_phase() const;

  /// Model of the next phase. A phase with nothing to decide yields an
  /// empty model. May rewind to the protection logical phase after an
  /// exclusion conflict; throws PlanError once retries are exhausted.
  const PhaseModel& build_next();
  /// Greedy starting point for the built phase (empty when none is found).
  std::vector<double> greedy_values() const;
  /// Decodes values for the built phase and advances.
  void accept(const std::vector<double>& values, PhaseReport report);
  /// build_next + solve + accept.
  void solve_next();

  const NetworkConfiguration& configuration() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

/// Full pipeline. Throws PlanError when a phase has no feasible solution.
NetworkConfiguration plan(const Instance& instance, SurvivabilityMode mode, Approach approach,
                          const PlanOptions& options = {});

/// Greedy incumbents used to seed the solver. Each returns an empty vector
/// when the heuristic fails.
std::vector<double> greedy_logical(const LogicalPhaseInput& input, const PhaseModel& phase);
std::vector<double> greedy_routing(const RoutingPhaseInput& input, const PhaseModel& phase);

/// Shortest fiber path avoiding the exclusion and links with no free
/// wavelength; empty when none exists.
PhysicalPath shortest_fiber_path(const PhysicalTopology& topology, NodeId from, NodeId to,
                                 const Exclusion& exclusion, const std::vector<int>& free_wavelengths);

}  // namespace otnplan
