#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "otnplan/milp.h"

namespace otnplan::milp {

int Model::add_variable(std::string name, VarKind kind, double lower, double upper,
                        double objective) {
  const int id = variable_count();
  if (!index_.emplace(name, id).second) throw ModelError("duplicate variable name " + name);
  variables_.push_back({std::move(name), kind, lower, upper, objective});
  return id;
}

int Model::add_constraint(std::string name, std::string family, std::vector<Term> terms,
                          Relation relation, double rhs) {
  constraints_.push_back({std::move(name), std::move(family), std::move(terms), relation, rhs});
  return constraint_count() - 1;
}

int Model::binary_count() const {
  int count = 0;
  for (const auto& v : variables_) count += v.kind == VarKind::kBinary;
  return count;
}

std::optional<int> Model::find_variable(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Model::validate() const {
  for (const auto& v : variables_) {
    if (v.lower > v.upper) throw ModelError("variable " + v.name + " has lower > upper");
    if (v.kind == VarKind::kBinary && (v.lower < 0.0 || v.upper > 1.0)) {
      throw ModelError("binary variable " + v.name + " has bounds outside [0, 1]");
    }
    if (std::isnan(v.objective)) throw ModelError("variable " + v.name + " has NaN cost");
  }
  for (const auto& c : constraints_) {
    for (const Term& t : c.terms) {
      if (t.var < 0 || t.var >= variable_count()) {
        throw ModelError("constraint " + c.name + " references undeclared variable id " +
                         std::to_string(t.var));
      }
    }
    if (std::isnan(c.rhs)) throw ModelError("constraint " + c.name + " has NaN rhs");
  }
}

std::map<std::string, int> Model::family_counts() const {
  std::map<std::string, int> out;
  for (const auto& c : constraints_) ++out[c.family];
  return out;
}

double Model::evaluate_objective(const std::vector<double>& values) const {
  double obj = offset_;
  for (int j = 0; j < variable_count(); ++j) obj += variables_[j].objective * values.at(j);
  return obj;
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasibleWithGap: return "feasible-with-gap";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kTimeLimit: return "time-limit";
  }
  return "?";
}

double relative_gap(double incumbent, double bound) {
  if (!std::isfinite(incumbent)) return kInfinity;
  if (!std::isfinite(bound)) return kInfinity;
  return std::max(0.0, incumbent - bound) / std::max(std::fabs(incumbent), 1e-9);
}

std::vector<std::string> check_solution(const Model& model, const std::vector<double>& values,
                                        double tol) {
  std::vector<std::string> out;
  if (static_cast<int>(values.size()) != model.variable_count()) {
    out.push_back("value vector has " + std::to_string(values.size()) + " entries, model has " +
                  std::to_string(model.variable_count()) + " variables");
    return out;
  }
  for (int j = 0; j < model.variable_count(); ++j) {
    const Variable& v = model.variables()[j];
    const double x = values[j];
    if (!std::isfinite(x)) {
      out.push_back(v.name + " is not finite");
      continue;
    }
    if (x < v.lower - tol || x > v.upper + tol) out.push_back(v.name + " violates its bounds");
    if (v.kind == VarKind::kBinary && std::min(std::fabs(x), std::fabs(x - 1.0)) > tol) {
      out.push_back(v.name + " is not integral");
    }
  }
  for (const Constraint& c : model.constraints()) {
    double lhs = 0.0;
    for (const Term& t : c.terms) lhs += t.coef * values[t.var];
    const bool ok = c.relation == Relation::kLessEqual      ? lhs <= c.rhs + tol
                    : c.relation == Relation::kGreaterEqual ? lhs >= c.rhs - tol
                                                            : std::fabs(lhs - c.rhs) <= tol;
    if (!ok) {
      std::ostringstream msg;
      msg << c.name << " violated: lhs " << lhs << " vs rhs " << c.rhs;
      out.push_back(msg.str());
    }
  }
  return out;
}

std::vector<std::string> check_solution(const Model& model,
                                        const std::map<std::string, double>& values,
                                        double tol) {
  std::vector<double> dense(model.variable_count(), 0.0);
  for (const auto& [name, value] : values) {
    if (auto id = model.find_variable(name)) dense[*id] = value;
  }
  return check_solution(model, dense, tol);
}

std::map<std::string, double> parse_solution_listing(const std::string& text) {
  std::map<std::string, double> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#' || line[first] == '\\') continue;
    std::istringstream fields(line);
    std::string name;
    double value = 0.0;
    if (!(fields >> name >> value)) {
      throw ModelError("solution listing line " + std::to_string(line_no) +
                       ": expected 'name value'");
    }
    out[name] = value;
  }
  return out;
}

std::string format_solution_listing(const Model& model, const std::vector<double>& values) {
  std::string out;
  char buf[64];
  for (int j = 0; j < model.variable_count(); ++j) {
    std::snprintf(buf, sizeof(buf), " %.17g\n", values.at(j));
    out += model.variables()[j].name;
    out += buf;
  }
  return out;
}

std::vector<double> values_from_listing(const Model& model,
                                        const std::map<std::string, double>& listing) {
  std::vector<double> values(model.variable_count(), 0.0);
  for (const auto& [name, value] : listing) {
    auto id = model.find_variable(name);
    if (!id) throw ModelError("solution names unknown variable " + name);
    values[*id] = value;
  }
  return values;
}

}  // namespace otnplan::milp
