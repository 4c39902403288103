#pragma once

#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace otnplan::milp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kFeasibilityTol = 1e-6;
inline constexpr double kIntegralityTol = 1e-6;

enum class VarKind { kBinary, kContinuous };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Variable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = kInfinity;
  double objective = 0.0;
};

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::string name;
  /// Constraint family tag used by model audits (e.g. "flow_working").
  std::string family;
  std::vector<Term> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

/// Structural problem with a model (undeclared variable, bad bounds).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Minimization problem over binary and continuous variables.
class Model {
 public:
  int add_variable(std::string name, VarKind kind, double lower, double upper, double objective);
  int add_binary(std::string name, double objective = 0.0) {
    return add_variable(std::move(name), VarKind::kBinary, 0.0, 1.0, objective);
  }
  int add_continuous(std::string name, double lower, double upper, double objective = 0.0) {
    return add_variable(std::move(name), VarKind::kContinuous, lower, upper, objective);
  }
  int add_constraint(std::string name, std::string family, std::vector<Term> terms,
                     Relation relation, double rhs);

  const std::vector<Variable>& variables() const { return variables_; }
  std::vector<Variable>& mutable_variables() { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  int variable_count() const { return static_cast<int>(variables_.size()); }
  int constraint_count() const { return static_cast<int>(constraints_.size()); }
  int binary_count() const;

  /// Constant added to the objective.
  double objective_offset() const { return offset_; }
  void set_objective_offset(double offset) { offset_ = offset; }

  std::optional<int> find_variable(const std::string& name) const;

  /// Throws ModelError when a term references an undeclared variable, a
  /// binary variable has bounds outside [0, 1], or lower > upper.
  void validate() const;

  /// Per-family constraint counts, in family name order.
  std::map<std::string, int> family_counts() const;

  double evaluate_objective(const std::vector<double>& values) const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::map<std::string, int> index_;
  double offset_ = 0.0;
};

enum class SolveStatus { kOptimal, kFeasibleWithGap, kInfeasible, kUnbounded, kTimeLimit };
std::string to_string(SolveStatus status);

struct SolveStats {
  long nodes = 0;
  long lp_iterations = 0;
  double seconds = 0.0;
};

struct Solution {
  SolveStatus status = SolveStatus::kInfeasible;
  /// Incumbent values by variable id; empty when no incumbent exists.
  std::vector<double> values;
  double objective = kInfinity;
  double best_bound = -kInfinity;
  double gap = kInfinity;
  SolveStats stats;

  bool has_incumbent() const { return !values.empty(); }
};

/// (incumbent - bound) / max(|incumbent|, 1e-9).
double relative_gap(double incumbent, double bound);

/// LP relaxation (binary variables relaxed to [0, 1]) by bounded-variable
/// primal simplex. Status is kOptimal, kInfeasible, kUnbounded or
/// kTimeLimit.
Solution solve_lp(const Model& model, double time_limit_seconds = kInfinity);

struct MilpOptions {
  /// Stop once the relative gap is at or below this fraction.
  double gap = 0.0;
  double time_limit_seconds = kInfinity;
  /// Optional starting incumbent; ignored unless it passes check_solution().
  std::vector<double> initial_incumbent;
  /// When the search proves optimality, replace the incumbent by the optimal
  /// solution that, scanning binaries from the highest id down, keeps each
  /// at 0 whenever possible. Ties thus favour ones on the lowest ids.
  bool lexicographic_ties = false;
};

/// Best-bound branch and bound on the most fractional binary (lowest id on
/// ties), single-threaded and deterministic.
Solution solve_milp(const Model& model, const MilpOptions& options = {});

/// Independent feasibility check of a full assignment. Returns one message
/// per violated bound, constraint or integrality requirement.
std::vector<std::string> check_solution(const Model& model, const std::vector<double>& values,
                                        double tol = kFeasibilityTol);
/// Same, with values keyed by variable name; missing names count as 0.
std::vector<std::string> check_solution(const Model& model,
                                        const std::map<std::string, double>& values,
                                        double tol = kFeasibilityTol);

/// LP text format. Binary variables go in a `Binary` section; an objective
/// constant is written as a coefficient on `const_one` fixed to 1; an empty
/// objective is written as `obj: 0 x_dummy`.
std::string emit_lp(const Model& model, const std::string& problem_name = "");
/// Parses the subset of LP format that emit_lp produces (minimize only).
/// `const_one` folds back into the objective offset and `x_dummy` is
/// dropped. Constraint families are recovered from the `family__` name
/// prefix when present.
Model parse_lp(const std::string& text);

/// `name value` per line; blank lines and lines starting with '#' or '\'
/// are skipped.
std::map<std::string, double> parse_solution_listing(const std::string& text);
std::string format_solution_listing(const Model& model, const std::vector<double>& values);
/// Maps a name-keyed listing onto variable ids; throws ModelError for names
/// the model does not declare. Unlisted variables default to 0.
std::vector<double> values_from_listing(const Model& model,
                                        const std::map<std::string, double>& listing);

}  // namespace otnplan::milp
