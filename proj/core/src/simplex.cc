#include <algorithm>
#include <cmath>
#include <map>

#include "simplex_internal.h"

namespace otnplan::milp::detail {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kPrimalTol = 1e-9;
constexpr int kDegenerateBeforeBland = 30;

enum class VarState : unsigned char { kBasic, kAtLower, kAtUpper, kFreeZero };

class BoundedSimplex {
 public:
  BoundedSimplex(const LpData& lp, const std::vector<double>& lower,
                 const std::vector<double>& upper, Clock::time_point deadline)
      : lp_(lp), m_(lp.rows), n_(lp.cols), total_(n_ + 2 * m_), deadline_(deadline) {
    lo_.assign(total_, 0.0);
    up_.assign(total_, 0.0);
    x_.assign(total_, 0.0);
    state_.assign(total_, VarState::kAtLower);
    sign_.assign(m_, 1.0);
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lower[j];
      up_[j] = upper[j];
    }
    for (int i = 0; i < m_; ++i) {
      const int s = n_ + i;
      switch (lp_.relation[i]) {
        case Relation::kLessEqual: lo_[s] = 0.0; up_[s] = kInfinity; break;
        case Relation::kGreaterEqual: lo_[s] = -kInfinity; up_[s] = 0.0; break;
        case Relation::kEqual: lo_[s] = 0.0; up_[s] = 0.0; break;
      }
    }
  }

  LpResult run() {
    LpResult result;
    for (int j = 0; j < n_; ++j) {
      if (lo_[j] > up_[j] + kPrimalTol) return result;  // infeasible bounds
    }
    initial_basis();
    // Phase 1: drive artificials to zero.
    cost_.assign(total_, 0.0);
    bool need_phase1 = false;
    for (int i = 0; i < m_; ++i) {
      const int a = n_ + m_ + i;
      if (state_[a] == VarState::kBasic) {
        cost_[a] = 1.0;
        need_phase1 = true;
      }
    }
    if (need_phase1) {
      SolveStatus st = iterate();
      result.iterations = iterations_;
      if (st == SolveStatus::kTimeLimit) {
        result.status = st;
        return result;
      }
      double infeas = 0.0;
      for (int i = 0; i < m_; ++i) infeas += x_[n_ + m_ + i];
      if (infeas > 1e-7) {
        result.status = SolveStatus::kInfeasible;
        return result;
      }
    }
    for (int i = 0; i < m_; ++i) {
      const int a = n_ + m_ + i;
      lo_[a] = up_[a] = 0.0;
      if (state_[a] != VarState::kBasic) x_[a] = 0.0;
    }
    cost_.assign(total_, 0.0);
    for (int j = 0; j < n_; ++j) cost_[j] = lp_.cost[j];
    SolveStatus st = iterate();
    result.iterations = iterations_;
    result.status = st;
    if (st != SolveStatus::kOptimal) return result;
    result.x.assign(x_.begin(), x_.begin() + n_);
    double obj = lp_.offset;
    for (int j = 0; j < n_; ++j) obj += lp_.cost[j] * x_[j];
    result.objective = obj;
    return result;
  }

 private:
  template <typename F>
  void for_column(int j, F&& f) const {
    if (j < n_) {
      for (int p = lp_.col_start[j]; p < lp_.col_start[j + 1]; ++p) f(lp_.row_index[p], lp_.value[p]);
    } else if (j < n_ + m_) {
      f(j - n_, 1.0);
    } else {
      f(j - n_ - m_, sign_[j - n_ - m_]);
    }
  }

  void initial_basis() {
    for (int j = 0; j < n_; ++j) {
      if (std::isfinite(lo_[j])) {
        x_[j] = lo_[j];
        state_[j] = VarState::kAtLower;
      } else if (std::isfinite(up_[j])) {
        x_[j] = up_[j];
        state_[j] = VarState::kAtUpper;
      } else {
        x_[j] = 0.0;
        state_[j] = VarState::kFreeZero;
      }
    }
    std::vector<double> residual(lp_.rhs);
    for (int j = 0; j < n_; ++j) {
      if (x_[j] == 0.0) continue;
      for_column(j, [&](int r, double v) { residual[r] -= v * x_[j]; });
    }
    basis_.assign(m_, -1);
    binv_.assign(static_cast<size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const int s = n_ + i;
      const int a = n_ + m_ + i;
      const double r = residual[i];
      lo_[a] = 0.0;
      up_[a] = 0.0;
      state_[a] = VarState::kAtLower;
      x_[a] = 0.0;
      if (r >= lo_[s] - kPrimalTol && r <= up_[s] + kPrimalTol) {
        basis_[i] = s;
        state_[s] = VarState::kBasic;
        x_[s] = r;
        binv_[idx(i, i)] = 1.0;
      } else {
        // Slack sits at zero (within its bounds); the artificial absorbs r.
        state_[s] = lp_.relation[i] == Relation::kGreaterEqual ? VarState::kAtUpper
                                                                : VarState::kAtLower;
        x_[s] = 0.0;
        sign_[i] = r >= 0 ? 1.0 : -1.0;
        up_[a] = kInfinity;
        basis_[i] = a;
        state_[a] = VarState::kBasic;
        x_[a] = std::fabs(r);
        binv_[idx(i, i)] = sign_[i];
      }
    }
  }

  size_t idx(int r, int c) const { return static_cast<size_t>(r) * m_ + c; }

  void recompute_basic_values() {
    std::vector<double> residual(lp_.rhs);
    for (int j = 0; j < total_; ++j) {
      if (state_[j] == VarState::kBasic || x_[j] == 0.0) continue;
      for_column(j, [&](int r, double v) { residual[r] -= v * x_[j]; });
    }
    for (int i = 0; i < m_; ++i) {
      double v = 0.0;
      const double* row = &binv_[idx(i, 0)];
      for (int k = 0; k < m_; ++k) v += row[k] * residual[k];
      x_[basis_[i]] = v;
    }
  }

  void reinvert() {
    // Gauss-Jordan on the current basis matrix.
    std::vector<double> b(static_cast<size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      for_column(basis_[i], [&](int r, double v) { b[idx(r, i)] = v; });
    }
    std::vector<double> inv(static_cast<size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) inv[idx(i, i)] = 1.0;
    for (int c = 0; c < m_; ++c) {
      int piv = c;
      for (int r = c + 1; r < m_; ++r) {
        if (std::fabs(b[idx(r, c)]) > std::fabs(b[idx(piv, c)])) piv = r;
      }
      if (std::fabs(b[idx(piv, c)]) < 1e-12) return;  // keep the eta-updated inverse
      if (piv != c) {
        for (int k = 0; k < m_; ++k) {
          std::swap(b[idx(piv, k)], b[idx(c, k)]);
          std::swap(inv[idx(piv, k)], inv[idx(c, k)]);
        }
      }
      const double p = b[idx(c, c)];
      for (int k = 0; k < m_; ++k) {
        b[idx(c, k)] /= p;
        inv[idx(c, k)] /= p;
      }
      for (int r = 0; r < m_; ++r) {
        if (r == c) continue;
        const double f = b[idx(r, c)];
        if (f == 0.0) continue;
        for (int k = 0; k < m_; ++k) {
          b[idx(r, k)] -= f * b[idx(c, k)];
          inv[idx(r, k)] -= f * inv[idx(c, k)];
        }
      }
    }
    binv_ = std::move(inv);
  }

  SolveStatus iterate() {
    std::vector<double> y(m_), alpha(m_);
    int degenerate_run = 0;
    bool bland = false;
    const long limit = 50L * (m_ + n_) + 5000;
    long local = 0;
    while (true) {
      if (++local > limit) return SolveStatus::kTimeLimit;
      if ((iterations_ & 31) == 0 && Clock::now() > deadline_) return SolveStatus::kTimeLimit;
      if (local % 64 == 0) {
        if (m_ <= 300 && local % 256 == 0) reinvert();
        recompute_basic_values();
      }

      // Duals.
      std::fill(y.begin(), y.end(), 0.0);
      for (int i = 0; i < m_; ++i) {
        const double cb = cost_[basis_[i]];
        if (cb == 0.0) continue;
        const double* row = &binv_[idx(i, 0)];
        for (int k = 0; k < m_; ++k) y[k] += cb * row[k];
      }

      // Pricing.
      int entering = -1;
      double dir = 0.0;
      double best = 0.0;
      for (int j = 0; j < total_; ++j) {
        const VarState st = state_[j];
        if (st == VarState::kBasic) continue;
        if (up_[j] - lo_[j] <= 0.0 && st != VarState::kFreeZero) continue;
        double d = cost_[j];
        for_column(j, [&](int r, double v) { d -= y[r] * v; });
        double score = 0.0;
        double this_dir = 0.0;
        if ((st == VarState::kAtLower || st == VarState::kFreeZero) && d < -kCostTol) {
          score = -d;
          this_dir = 1.0;
        } else if ((st == VarState::kAtUpper || st == VarState::kFreeZero) && d > kCostTol) {
          score = d;
          this_dir = -1.0;
        }
        if (this_dir == 0.0) continue;
        if (bland) {
          entering = j;
          dir = this_dir;
          break;
        }
        if (score > best) {
          best = score;
          entering = j;
          dir = this_dir;
        }
      }
      if (entering < 0) {
        recompute_basic_values();
        return SolveStatus::kOptimal;
      }

      // Column in the basis coordinates.
      std::fill(alpha.begin(), alpha.end(), 0.0);
      for_column(entering, [&](int r, double v) {
        for (int i = 0; i < m_; ++i) alpha[i] += binv_[idx(i, r)] * v;
      });

      // Ratio test.
      double t_best = kInfinity;
      int leave = -1;
      bool leave_to_lower = true;
      double leave_mag = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double delta = dir * alpha[i];
        if (std::fabs(delta) <= kPivotTol) continue;
        const int b = basis_[i];
        double t;
        bool to_lower;
        if (delta > 0) {
          if (!std::isfinite(lo_[b])) continue;
          t = std::max(0.0, (x_[b] - lo_[b]) / delta);
          to_lower = true;
        } else {
          if (!std::isfinite(up_[b])) continue;
          t = std::max(0.0, (up_[b] - x_[b]) / -delta);
          to_lower = false;
        }
        const double mag = std::fabs(delta);
        bool take = false;
        if (t < t_best - 1e-12) {
          take = true;
        } else if (t <= t_best + 1e-12) {
          take = bland ? b < basis_[leave] : mag > leave_mag;
        }
        if (take) {
          t_best = t;
          leave = i;
          leave_to_lower = to_lower;
          leave_mag = mag;
        }
      }
      const double span = up_[entering] - lo_[entering];
      const bool flip = std::isfinite(span) && span <= t_best;
      if (!flip && leave < 0) return SolveStatus::kUnbounded;
      const double t = flip ? span : t_best;

      ++iterations_;
      if (t <= 1e-12) {
        if (++degenerate_run > kDegenerateBeforeBland) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }

      for (int i = 0; i < m_; ++i) x_[basis_[i]] -= t * dir * alpha[i];
      x_[entering] += dir * t;

      if (flip) {
        if (dir > 0) {
          x_[entering] = up_[entering];
          state_[entering] = VarState::kAtUpper;
        } else {
          x_[entering] = lo_[entering];
          state_[entering] = VarState::kAtLower;
        }
        continue;
      }

      const int out = basis_[leave];
      x_[out] = leave_to_lower ? lo_[out] : up_[out];
      state_[out] = leave_to_lower ? VarState::kAtLower : VarState::kAtUpper;
      basis_[leave] = entering;
      state_[entering] = VarState::kBasic;

      const double pivot = alpha[leave];
      double* prow = &binv_[idx(leave, 0)];
      for (int k = 0; k < m_; ++k) prow[k] /= pivot;
      for (int i = 0; i < m_; ++i) {
        if (i == leave) continue;
        const double f = alpha[i];
        if (f == 0.0) continue;
        double* row = &binv_[idx(i, 0)];
        for (int k = 0; k < m_; ++k) row[k] -= f * prow[k];
      }
    }
  }

  const LpData& lp_;
  int m_;
  int n_;
  int total_;
  Clock::time_point deadline_;
  std::vector<double> lo_, up_, x_, cost_, sign_;
  std::vector<VarState> state_;
  std::vector<int> basis_;
  std::vector<double> binv_;
  long iterations_ = 0;
};

}  // namespace

LpData build_lp_data(const Model& model) {
  LpData lp;
  lp.cols = model.variable_count();
  lp.cost.resize(lp.cols);
  for (int j = 0; j < lp.cols; ++j) lp.cost[j] = model.variables()[j].objective;
  lp.offset = model.objective_offset();

  std::vector<std::vector<std::pair<int, double>>> columns(lp.cols);
  for (const Constraint& c : model.constraints()) {
    std::map<int, double> merged;
    for (const Term& t : c.terms) merged[t.var] += t.coef;
    std::erase_if(merged, [](const auto& kv) { return kv.second == 0.0; });
    if (merged.empty()) {
      const bool ok = c.relation == Relation::kLessEqual      ? 0.0 <= c.rhs + kFeasibilityTol
                      : c.relation == Relation::kGreaterEqual ? 0.0 >= c.rhs - kFeasibilityTol
                                                              : std::fabs(c.rhs) <= kFeasibilityTol;
      if (!ok) lp.trivially_infeasible = true;
      continue;
    }
    const int row = lp.rows++;
    lp.rhs.push_back(c.rhs);
    lp.relation.push_back(c.relation);
    for (const auto& [var, coef] : merged) columns[var].emplace_back(row, coef);
  }
  lp.col_start.assign(lp.cols + 1, 0);
  for (int j = 0; j < lp.cols; ++j) {
    lp.col_start[j + 1] = lp.col_start[j] + static_cast<int>(columns[j].size());
    for (const auto& [r, v] : columns[j]) {
      lp.row_index.push_back(r);
      lp.value.push_back(v);
    }
  }
  return lp;
}

LpResult solve_bounded(const LpData& lp, const std::vector<double>& lower,
                       const std::vector<double>& upper, Clock::time_point deadline) {
  if (lp.trivially_infeasible) return {};
  BoundedSimplex simplex(lp, lower, upper, deadline);
  return simplex.run();
}

}  // namespace otnplan::milp::detail

namespace otnplan::milp {

Solution solve_lp(const Model& model, double time_limit_seconds) {
  model.validate();
  const auto start = detail::Clock::now();
  const auto deadline =
      std::isfinite(time_limit_seconds)
          ? start + std::chrono::duration_cast<detail::Clock::duration>(
                        std::chrono::duration<double>(std::max(0.0, time_limit_seconds)))
          : detail::Clock::time_point::max();
  detail::LpData lp = detail::build_lp_data(model);
  std::vector<double> lower, upper;
  for (const Variable& v : model.variables()) {
    lower.push_back(v.lower);
    upper.push_back(v.upper);
  }
  detail::LpResult r = detail::solve_bounded(lp, lower, upper, deadline);
  Solution sol;
  sol.status = r.status;
  sol.stats.lp_iterations = r.iterations;
  sol.stats.seconds = std::chrono::duration<double>(detail::Clock::now() - start).count();
  if (r.status == SolveStatus::kOptimal) {
    sol.values = std::move(r.x);
    sol.objective = r.objective;
    sol.best_bound = r.objective;
    sol.gap = 0.0;
  }
  return sol;
}

}  // namespace otnplan::milp
