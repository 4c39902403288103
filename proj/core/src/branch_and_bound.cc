#include <algorithm>
#include <cmath>
#include <queue>

#include "otnplan/milp.h"
#include "simplex_internal.h"

namespace otnplan::milp {

namespace {

using detail::Clock;

struct Node {
  std::vector<std::pair<int, signed char>> fixes;  // (var, value)
  double bound = -kInfinity;
  long seq = 0;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.seq > b.seq;
  }
};

Clock::time_point deadline_after(Clock::time_point start, double seconds) {
  if (!std::isfinite(seconds)) return Clock::time_point::max();
  return start + std::chrono::duration_cast<Clock::duration>(
                     std::chrono::duration<double>(std::max(0.0, seconds)));
}

class BranchAndBound {
 public:
  BranchAndBound(const Model& model, const MilpOptions& options, Clock::time_point start)
      : model_(model), options_(options), start_(start),
        deadline_(deadline_after(start, options.time_limit_seconds)),
        lp_(detail::build_lp_data(model)) {
    for (const Variable& v : model.variables()) {
      root_lower_.push_back(v.lower);
      root_upper_.push_back(v.upper);
    }
  }

  Solution run() {
    Solution sol;
    if (!options_.initial_incumbent.empty() &&
        check_solution(model_, options_.initial_incumbent).empty()) {
      incumbent_ = options_.initial_incumbent;
      incumbent_obj_ = model_.evaluate_objective(incumbent_);
    }
    if (options_.time_limit_seconds <= 0.0) return finish(SolveStatus::kTimeLimit);

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    open.push(Node{{}, -kInfinity, seq_++});
    bool root = true;
    while (!open.empty()) {
      if (Clock::now() > deadline_) return finish(SolveStatus::kTimeLimit);
      global_bound_ = std::max(global_bound_, std::min(open.top().bound, incumbent_obj_));
      if (gap_closed()) break;

      Node node = open.top();
      open.pop();
      if (node.bound >= incumbent_obj_ - prune_tolerance()) continue;

      std::vector<double> lower = root_lower_, upper = root_upper_;
      for (const auto& [var, val] : node.fixes) lower[var] = upper[var] = val;
      detail::LpResult lp = detail::solve_bounded(lp_, lower, upper, deadline_);
      ++nodes_;
      lp_iterations_ += lp.iterations;
      if (lp.status == SolveStatus::kTimeLimit) return finish(SolveStatus::kTimeLimit);
      if (lp.status == SolveStatus::kUnbounded) {
        if (root && incumbent_.empty()) return finish(SolveStatus::kUnbounded);
        continue;
      }
      root = false;
      if (lp.status != SolveStatus::kOptimal) continue;
      if (lp.objective >= incumbent_obj_ - prune_tolerance()) continue;

      int branch_var = -1;
      double best_frac = 0.0;
      for (int j = 0; j < model_.variable_count(); ++j) {
        if (model_.variables()[j].kind != VarKind::kBinary) continue;
        const double frac = std::fabs(lp.x[j] - std::round(lp.x[j]));
        if (frac > 1e-9 && frac > best_frac + 1e-12) {
          best_frac = frac;
          branch_var = j;
        }
      }
      if (branch_var < 0) {
        std::vector<double> candidate = lp.x;
        for (int j = 0; j < model_.variable_count(); ++j) {
          if (model_.variables()[j].kind == VarKind::kBinary) candidate[j] = std::round(candidate[j]);
        }
        if (check_solution(model_, candidate).empty()) {
          const double obj = model_.evaluate_objective(candidate);
          if (obj < incumbent_obj_) {
            incumbent_obj_ = obj;
            incumbent_ = std::move(candidate);
          }
        }
        continue;
      }
      for (signed char val : {static_cast<signed char>(0), static_cast<signed char>(1)}) {
        Node child;
        child.fixes = node.fixes;
        child.fixes.emplace_back(branch_var, val);
        child.bound = lp.objective;
        child.seq = seq_++;
        open.push(std::move(child));
      }
    }
    if (open.empty()) {
      global_bound_ = incumbent_.empty() ? kInfinity : incumbent_obj_;
      return finish(incumbent_.empty() ? SolveStatus::kInfeasible : SolveStatus::kOptimal);
    }
    return finish(SolveStatus::kFeasibleWithGap);
  }

 private:
  double prune_tolerance() const {
    if (!std::isfinite(incumbent_obj_)) return 0.0;
    const double scale = std::max(std::fabs(incumbent_obj_), 1e-9);
    return std::max(1e-7 * std::max(1.0, std::fabs(incumbent_obj_)),
                    std::isfinite(options_.gap) ? options_.gap * scale : kInfinity);
  }

  bool gap_closed() const {
    if (incumbent_.empty()) return false;
    return relative_gap(incumbent_obj_, global_bound_) <= options_.gap;
  }

  Solution finish(SolveStatus status) {
    Solution sol;
    sol.stats.nodes = nodes_;
    sol.stats.lp_iterations = lp_iterations_;
    sol.stats.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    if (!incumbent_.empty()) {
      sol.values = incumbent_;
      sol.objective = incumbent_obj_;
      sol.best_bound = std::min(global_bound_, incumbent_obj_);
      sol.gap = relative_gap(sol.objective, sol.best_bound);
      if (status == SolveStatus::kFeasibleWithGap && sol.gap <= 1e-9) status = SolveStatus::kOptimal;
    } else {
      sol.best_bound = global_bound_;
    }
    sol.status = status;
    return sol;
  }

  const Model& model_;
  MilpOptions options_;
  Clock::time_point start_;
  Clock::time_point deadline_;
  detail::LpData lp_;
  std::vector<double> root_lower_, root_upper_;
  std::vector<double> incumbent_;
  double incumbent_obj_ = kInfinity;
  double global_bound_ = -kInfinity;
  long nodes_ = 0;
  long lp_iterations_ = 0;
  long seq_ = 0;
};

// Walks binaries from the highest id down and keeps each at 0 whenever some
// optimal solution allows it, so ties favour ones on the lowest ids.
Solution lexicographic_refine(const Model& model, Solution best, const MilpOptions& options,
                              Clock::time_point start) {
  Model restricted = model;
  std::vector<Term> objective_terms;
  for (int j = 0; j < model.variable_count(); ++j) {
    if (model.variables()[j].objective != 0.0) {
      objective_terms.push_back({j, model.variables()[j].objective});
    }
  }
  const double cap = best.objective - model.objective_offset() +
                     1e-6 * std::max(1.0, std::fabs(best.objective));
  restricted.add_constraint("lexcap__objective", "lexcap", objective_terms, Relation::kLessEqual,
                            cap);
  auto& vars = restricted.mutable_variables();
  std::vector<double> current = best.values;
  const auto deadline = deadline_after(start, options.time_limit_seconds);
  for (int j = model.variable_count() - 1; j >= 0; --j) {
    if (vars[j].kind != VarKind::kBinary || vars[j].lower == vars[j].upper) continue;
    if (current[j] < 0.5) {
      vars[j].upper = 0.0;
      continue;
    }
    if (Clock::now() > deadline) break;
    vars[j].upper = 0.0;
    MilpOptions probe;
    probe.gap = kInfinity;
    probe.time_limit_seconds =
        std::chrono::duration<double>(deadline - Clock::now()).count();
    if (deadline == Clock::time_point::max()) probe.time_limit_seconds = kInfinity;
    BranchAndBound search(restricted, probe, Clock::now());
    Solution trial = search.run();
    best.stats.nodes += trial.stats.nodes;
    best.stats.lp_iterations += trial.stats.lp_iterations;
    if (trial.has_incumbent()) {
      current.assign(trial.values.begin(), trial.values.begin() + model.variable_count());
    } else if (trial.status == SolveStatus::kInfeasible) {
      vars[j].upper = 1.0;
      vars[j].lower = 1.0;
    } else {
      vars[j].upper = 1.0;
      break;  // out of time; keep what we have
    }
  }
  best.values = current;
  best.objective = model.evaluate_objective(current);
  best.stats.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return best;
}

}  // namespace

Solution solve_milp(const Model& model, const MilpOptions& options) {
  model.validate();
  if (options.gap < 0.0) throw ModelError("gap must be >= 0");
  const auto start = Clock::now();
  BranchAndBound bb(model, options, start);
  Solution sol = bb.run();
  if (options.lexicographic_ties && sol.status == SolveStatus::kOptimal && options.gap == 0.0) {
    sol = lexicographic_refine(model, std::move(sol), options, start);
  }
  return sol;
}

}  // namespace otnplan::milp
