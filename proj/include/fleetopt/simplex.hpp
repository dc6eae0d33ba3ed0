#ifndef FLEETOPT_SIMPLEX_HPP
#define FLEETOPT_SIMPLEX_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fleetopt/ip_model.hpp"

namespace fleetopt {

enum class LpStatus { Optimal, Infeasible, IterationLimit, Interrupted };

struct LpResult {
  LpStatus status = LpStatus::IterationLimit;
  double objective = 0.0;
  std::vector<double> x;   // structural variables only
  std::int64_t iterations = 0;
};

// Dense-inverse revised simplex for bounded variables, two-phase.
// Columns are stored sparse; the basis inverse is maintained densely, so
// memory is O(m^2 + nnz) and one iteration costs O(m^2 + nnz).
class BoundedSimplex {
 public:
  using Interrupt = std::function<bool()>;  // true => stop early

  // Relaxation of an integer instance with optional bound overrides
  // (used by branch and bound to fix or restrict variables).
  BoundedSimplex(const IpInstance& inst, const std::vector<double>& lb,
                 const std::vector<double>& ub) {
    n_struct_ = static_cast<int>(inst.num_vars());
    m_ = static_cast<int>(inst.rows.size());
    lb_ = lb;
    ub_ = ub;
    cost_ = inst.objective;
    cols_.resize(n_struct_);
    rhs_.resize(m_);
    for (int r = 0; r < m_; ++r) {
      const IpRow& row = inst.rows[r];
      rhs_[r] = row.rhs;
      for (const auto& [k, a] : row.coefs)
        if (a != 0.0) cols_[k].push_back({r, a});
    }
    // Slack column per inequality: +1 for <=, -1 for >=, range [0, inf).
    for (int r = 0; r < m_; ++r) {
      const Rel rel = inst.rows[r].rel;
      if (rel == Rel::Eq) continue;
      cols_.push_back({{r, rel == Rel::Le ? 1.0 : -1.0}});
      lb_.push_back(0.0);
      ub_.push_back(kInf);
      cost_.push_back(0.0);
    }
    n_ = static_cast<int>(cols_.size());
  }

  LpResult solve(std::int64_t max_iters = -1, Interrupt interrupt = {}) {
    if (max_iters < 0) max_iters = 20000 + 50LL * (n_ + m_);
    for (int k = 0; k < n_; ++k)
      if (lb_[k] > ub_[k] + 1e-9) return {LpStatus::Infeasible, 0.0, {}, 0};

    init_phase1();
    LpResult res;
    LpStatus st = run(true, max_iters, interrupt, res.iterations);
    if (st == LpStatus::Optimal && phase_objective() > 1e-6)
      st = LpStatus::Infeasible;
    if (st != LpStatus::Optimal) {
      res.status = st;
      return res;
    }
    freeze_artificials();
    st = run(false, max_iters, interrupt, res.iterations);
    res.status = st;
    if (st == LpStatus::Optimal) {
      res.x.assign(x_.begin(), x_.begin() + n_struct_);
      res.objective = 0.0;
      for (int k = 0; k < n_struct_; ++k)
        res.objective += cost_[k] * x_[k];
    }
    return res;
  }

  // Rough footprint for memory budgeting by callers.
  std::size_t memory_bytes() const {
    std::size_t nnz = 0;
    for (const auto& c : cols_) nnz += c.size();
    return sizeof(double) * (static_cast<std::size_t>(m_) * m_ + 6u * n_) +
           nnz * (sizeof(int) + sizeof(double));
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  static constexpr double kTol = 1e-7;
  static constexpr double kPivTol = 1e-9;

  struct Entry {
    int row;
    double val;
  };

  int n_struct_ = 0, n_ = 0, m_ = 0;
  std::vector<std::vector<Entry>> cols_;
  std::vector<double> cost_, lb_, ub_, rhs_;

  // Working state: n_total = n_ + m_ artificials.
  std::vector<double> x_, wlb_, wub_, wcost_;
  std::vector<int> basis_;          // basis_[r] = column basic in row r
  std::vector<signed char> stat_;   // -1 at lower, +1 at upper, 0 basic
  std::vector<double> binv_;        // m x m row-major

  double& B(int r, int c) { return binv_[static_cast<std::size_t>(r) * m_ + c]; }

  void init_phase1() {
    const int total = n_ + m_;
    x_.assign(total, 0.0);
    stat_.assign(total, -1);
    wlb_ = lb_;
    wub_ = ub_;
    wlb_.resize(total, 0.0);
    wub_.resize(total, kInf);
    for (int k = 0; k < n_; ++k) {
      // Start every bounded variable at the finite bound nearer zero.
      if (std::isfinite(wlb_[k]) &&
          (!std::isfinite(wub_[k]) ||
           std::abs(wlb_[k]) <= std::abs(wub_[k]))) {
        x_[k] = wlb_[k];
        stat_[k] = -1;
      } else if (std::isfinite(wub_[k])) {
        x_[k] = wub_[k];
        stat_[k] = +1;
      } else {
        x_[k] = 0.0;
        stat_[k] = -1;  // free variables start pegged at zero
      }
    }
    std::vector<double> resid = rhs_;
    for (int k = 0; k < n_; ++k)
      if (x_[k] != 0.0)
        for (const Entry& e : cols_[k]) resid[e.row] -= e.val * x_[k];
    // Artificial per row, signed so its value is nonnegative.
    basis_.resize(m_);
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    wcost_.assign(total, 0.0);
    for (int r = 0; r < m_; ++r) {
      const int a = n_ + r;
      basis_[r] = a;
      stat_[a] = 0;
      const double sign = resid[r] >= 0.0 ? 1.0 : -1.0;
      cols_.push_back({{r, sign}});
      x_[a] = std::abs(resid[r]);
      wcost_[a] = 1.0;
      B(r, r) = sign;  // inverse of the diagonal artificial basis
    }
  }

  double phase_objective() const {
    double s = 0.0;
    for (int r = 0; r < m_; ++r)
      if (basis_[r] >= n_) s += x_[basis_[r]];
    return s;
  }

  // After phase 1, pin artificials to zero so they can never re-enter.
  void freeze_artificials() {
    for (int a = n_; a < n_ + m_; ++a) {
      wlb_[a] = wub_[a] = 0.0;
    }
    wcost_.assign(n_ + m_, 0.0);
    for (int k = 0; k < n_; ++k) wcost_[k] = cost_[k];
  }

  LpStatus run(bool phase1, std::int64_t max_iters, const Interrupt& interrupt,
               std::int64_t& iter_count) {
    const int total = n_ + m_;
    std::vector<double> y(m_), alpha(m_);
    std::int64_t stall = 0;
    double last_obj = kInf;
    bool bland = false;
    for (std::int64_t it = 0; it < max_iters; ++it, ++iter_count) {
      if (interrupt && (it % 64 == 0) && interrupt())
        return LpStatus::Interrupted;

      // y = c_B' * Binv
      for (int c = 0; c < m_; ++c) {
        double s = 0.0;
        for (int r = 0; r < m_; ++r) {
          const double cb = wcost_[basis_[r]];
          if (cb != 0.0) s += cb * B(r, c);
        }
        y[c] = s;
      }
      // Price nonbasics.
      int enter = -1;
      double best = kTol;
      signed char dir = 0;
      for (int k = 0; k < total; ++k) {
        if (stat_[k] == 0) continue;
        if (wlb_[k] == wub_[k]) continue;  // fixed
        if (!phase1 && k >= n_) continue;  // frozen artificials
        double d = wcost_[k];
        for (const Entry& e : cols_[k]) d -= y[e.row] * e.val;
        double score = 0.0;
        signed char sd = 0;
        if (stat_[k] == -1 && d < -kTol) { score = -d; sd = +1; }
        else if (stat_[k] == +1 && d > kTol) { score = d; sd = -1; }
        else continue;
        if (bland) { enter = k; dir = sd; break; }
        if (score > best) { best = score; enter = k; dir = sd; }
      }
      if (enter < 0) return LpStatus::Optimal;

      // alpha = Binv * A_enter
      for (int r = 0; r < m_; ++r) {
        double s = 0.0;
        for (const Entry& e : cols_[enter]) s += B(r, e.row) * e.val;
        alpha[r] = s;
      }
      // Ratio test: entering moves by dir * t, basics by -dir * t * alpha.
      double tmax = wub_[enter] - wlb_[enter];  // bound flip limit
      int leave = -1;
      signed char leave_to = 0;
      for (int r = 0; r < m_; ++r) {
        const double a = -dir * alpha[r];
        if (std::abs(a) < kPivTol) continue;
        const int bk = basis_[r];
        double t;
        signed char to;
        if (a < 0.0) {  // basic decreases towards lower bound
          if (!std::isfinite(wlb_[bk])) continue;
          t = (wlb_[bk] - x_[bk]) / a;
          to = -1;
        } else {  // basic increases towards upper bound
          if (!std::isfinite(wub_[bk])) continue;
          t = (wub_[bk] - x_[bk]) / a;
          to = +1;
        }
        if (t < -1e-12) t = 0.0;
        if (t < tmax - 1e-12 ||
            (t < tmax + 1e-12 && leave >= 0 && bland &&
             bk < basis_[leave])) {
          tmax = t;
          leave = r;
          leave_to = to;
        }
      }
      if (!std::isfinite(tmax))
        return phase1 ? LpStatus::Infeasible : LpStatus::IterationLimit;

      const double step = dir * tmax;
      for (int r = 0; r < m_; ++r) x_[basis_[r]] -= step * alpha[r];
      x_[enter] += step;
      if (leave < 0) {
        stat_[enter] = -stat_[enter];  // bound flip
      } else {
        const int out = basis_[leave];
        stat_[out] = leave_to;
        x_[out] = leave_to < 0 ? wlb_[out] : wub_[out];
        basis_[leave] = enter;
        stat_[enter] = 0;
        pivot(leave, alpha);
      }
      // Anti-cycling: switch to Bland's rule after a long stall.
      double obj = 0.0;
      for (int r = 0; r < m_; ++r) obj += wcost_[basis_[r]] * x_[basis_[r]];
      if (obj < last_obj - 1e-10) {
        last_obj = obj;
        stall = 0;
        bland = false;
      } else if (++stall > 2000) {
        bland = true;
      }
    }
    return LpStatus::IterationLimit;
  }

  // Eta update of the dense inverse after the entering column replaces
  // row `leave` of the basis.
  void pivot(int leave, const std::vector<double>& alpha) {
    const double piv = alpha[leave];
    double* lrow = &binv_[static_cast<std::size_t>(leave) * m_];
    for (int c = 0; c < m_; ++c) lrow[c] /= piv;
    for (int r = 0; r < m_; ++r) {
      if (r == leave) continue;
      const double f = alpha[r];
      if (f == 0.0) continue;
      double* row = &binv_[static_cast<std::size_t>(r) * m_];
      for (int c = 0; c < m_; ++c) row[c] -= f * lrow[c];
    }
  }
};

inline LpResult solve_lp(const IpInstance& inst,
                         const std::vector<double>& lb,
                         const std::vector<double>& ub,
                         BoundedSimplex::Interrupt interrupt = {}) {
  BoundedSimplex sx(inst, lb, ub);
  return sx.solve(-1, std::move(interrupt));
}

inline LpResult solve_lp(const IpInstance& inst,
                         BoundedSimplex::Interrupt interrupt = {}) {
  std::vector<double> lb(inst.num_vars()), ub(inst.num_vars());
  for (std::size_t k = 0; k < inst.num_vars(); ++k) {
    lb[k] = inst.vars[k].lb;
    ub[k] = inst.vars[k].ub;
  }
  return solve_lp(inst, lb, ub, std::move(interrupt));
}

}  // namespace fleetopt

#endif  // FLEETOPT_SIMPLEX_HPP
