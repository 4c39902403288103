#pragma once

#include <chrono>
#include <vector>

#include "otnplan/milp.h"

namespace otnplan::milp::detail {

using Clock = std::chrono::steady_clock;

/// Column-major copy of a model's constraint matrix with empty rows removed.
struct LpData {
  int rows = 0;
  int cols = 0;
  std::vector<int> col_start;  // size cols + 1
  std::vector<int> row_index;
  std::vector<double> value;
  std::vector<double> rhs;
  std::vector<Relation> relation;
  std::vector<double> cost;
  double offset = 0.0;
  /// An empty constraint row whose relation fails for lhs = 0.
  bool trivially_infeasible = false;
};

LpData build_lp_data(const Model& model);

struct LpResult {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<double> x;
  double objective = kInfinity;
  long iterations = 0;
};

/// Bounded-variable primal simplex (two phases, dense basis inverse,
/// Dantzig pricing with a Bland fallback while degenerate pivots repeat).
LpResult solve_bounded(const LpData& lp, const std::vector<double>& lower,
                       const std::vector<double>& upper, Clock::time_point deadline);

}  // namespace otnplan::milp::detail
