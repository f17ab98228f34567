#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "wsnlife/errors.hpp"
#include "wsnlife/numerics.hpp"

namespace wsnlife {

/// Row-major dense matrix.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// maximize c.x subject to A x = b, x >= 0.
struct StandardLP {
  DenseMatrix A;
  std::vector<double> b;
  std::vector<double> c;
  std::vector<std::string> names;  // optional, one per column
};

enum class LPStatus { optimal, infeasible, unbounded };

inline std::string_view to_string(LPStatus s) {
  switch (s) {
    case LPStatus::optimal: return "optimal";
    case LPStatus::infeasible: return "infeasible";
    case LPStatus::unbounded: return "unbounded";
  }
  return "?";
}

struct LPSolution {
  LPStatus status = LPStatus::infeasible;
  std::vector<double> x;
  double objective = 0.0;
  int iterations = 0;
};

struct SimplexOptions {
  double pivot_tol = 1e-9;
  /// Consecutive degenerate pivots tolerated before switching to Bland's rule.
  int degenerate_limit = 50;
  /// When set, every pivot is logged; see README for the format.
  std::ostream* trace = nullptr;
  bool trace_tableau = false;
};

/// max |A x - b| for a candidate solution.
inline double lp_residual(const StandardLP& lp, const std::vector<double>& x) {
  double worst = 0.0;
  for (std::size_t i = 0; i < lp.A.rows; ++i) {
    KahanSum s;
    for (std::size_t j = 0; j < lp.A.cols; ++j) s += lp.A(i, j) * x[j];
    worst = std::max(worst, std::abs(s.value() - lp.b[i]));
  }
  return worst;
}

namespace detail {

/// Tableau with rows 0..m-1 holding [B^-1 A | B^-1 b] and row m holding
/// reduced costs c_B B^-1 A_j - c_j with the objective value in the last
/// column.
class SimplexTableau {
public:
  SimplexTableau(std::size_t m, std::size_t n) : m_(m), n_(n), t_(m + 1, n + 1), basis_(m) {}

  double& at(std::size_t r, std::size_t c) { return t_(r, c); }
  double at(std::size_t r, std::size_t c) const { return t_(r, c); }
  double& rhs(std::size_t r) { return t_(r, n_); }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const std::size_t width = n_ + 1;
    double* prow = &t_.data[pr * width];
    const double inv = 1.0 / prow[pc];
    for (std::size_t j = 0; j < width; ++j) prow[j] *= inv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == pr) continue;
      double* row = &t_.data[r * width];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) row[j] -= f * prow[j];
      row[pc] = 0.0;
    }
    basis_[pr] = pc;
  }

  void set_objective(const std::vector<double>& cost) {
    // reduced cost row for maximizing cost . x under the current basis
    for (std::size_t j = 0; j <= n_; ++j) {
      KahanSum s;
      for (std::size_t r = 0; r < m_; ++r) s += cost[basis_[r]] * t_(r, j);
      t_(m_, j) = s.value() - (j < n_ ? cost[j] : 0.0);
    }
  }

  void remove_row(std::size_t r) {
    const std::size_t width = n_ + 1;
    t_.data.erase(t_.data.begin() + static_cast<std::ptrdiff_t>(r * width),
                  t_.data.begin() + static_cast<std::ptrdiff_t>((r + 1) * width));
    --m_;
    t_.rows = m_ + 1;
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  void dump(std::ostream& os) const {
    os << "tableau " << m_ << "x" << n_ << "\n";
    for (std::size_t r = 0; r <= m_; ++r) {
      os << (r < m_ ? "  b" + std::to_string(basis_[r]) : std::string("  z"));
      for (std::size_t j = 0; j <= n_; ++j) os << ' ' << std::setprecision(6) << t_(r, j);
      os << '\n';
    }
  }

private:
  std::size_t m_;
  std::size_t n_;
  DenseMatrix t_;
  std::vector<std::size_t> basis_;
};

enum class PhaseResult { optimal, unbounded };

/// Primal simplex on the current objective row. Columns with allowed[j] ==
/// false never enter. Dantzig pricing, switching to Bland's rule after a run
/// of degenerate pivots; ratio-test ties go to the lowest basic index.
inline PhaseResult run_simplex(SimplexTableau& tab, const std::vector<bool>& allowed,
                               const SimplexOptions& opt, int max_iters, int& iterations,
                               int phase) {
  const std::size_t m = tab.rows();
  const std::size_t n = tab.cols();
  int degenerate_run = 0;
  bool bland = false;
  for (;;) {
    std::size_t enter = n;
    double best = -opt.pivot_tol;
    for (std::size_t j = 0; j < n; ++j) {
      if (!allowed[j]) continue;
      const double rc = tab.at(m, j);
      if (bland) {
        if (rc < -opt.pivot_tol) {
          enter = j;
          break;
        }
      } else if (rc < best) {
        best = rc;
        enter = j;
      }
    }
    if (enter == n) return PhaseResult::optimal;

    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      const double a = tab.at(r, enter);
      if (a <= opt.pivot_tol) continue;
      const double ratio = std::max(0.0, tab.rhs(r)) / a;
      if (leave == m) {
        leave = r;
        best_ratio = ratio;
        continue;
      }
      const double slack = 1e-12 * std::max(1.0, best_ratio);
      if (ratio < best_ratio - slack) {
        leave = r;
        best_ratio = ratio;
      } else if (ratio <= best_ratio + slack && tab.basis()[r] < tab.basis()[leave]) {
        leave = r;
        best_ratio = std::min(ratio, best_ratio);
      }
    }
    if (leave == m) return PhaseResult::unbounded;

    if (++iterations > max_iters) {
      throw NonConvergence("solve_lp: iteration limit " + std::to_string(max_iters) + " reached");
    }
    if (best_ratio <= opt.pivot_tol) {
      if (++degenerate_run >= opt.degenerate_limit) bland = true;
    } else {
      degenerate_run = 0;
    }
    if (opt.trace) {
      *opt.trace << "pivot " << iterations << " phase " << phase << " enter " << enter
                 << " leave " << tab.basis()[leave] << " ratio " << std::setprecision(17)
                 << best_ratio << (bland ? " bland" : "") << '\n';
      if (opt.trace_tableau) tab.dump(*opt.trace);
    }
    tab.pivot(leave, enter);
  }
}

}  // namespace detail

/// Two-phase dense primal simplex. tol.abs (default 1e-7 when zero) sets the
/// phase-one feasibility threshold; tol.max_iters caps total pivots.
inline LPSolution solve_lp(const StandardLP& lp, const Tolerance& tol = {1e-9, 1e-9, 100000},
                           const SimplexOptions& opt = {}) {
  tol.validate();
  const std::size_t m = lp.A.rows;
  const std::size_t n = lp.A.cols;
  if (lp.b.size() != m || lp.c.size() != n || lp.A.data.size() != m * n ||
      (!lp.names.empty() && lp.names.size() != n)) {
    throw DimensionMismatch("solve_lp: inconsistent A, b, c dimensions");
  }
  for (std::size_t i = 0; i < m; ++i) {
    bool nonzero = false;
    for (std::size_t j = 0; j < n && !nonzero; ++j) nonzero = lp.A(i, j) != 0.0;
    if (!nonzero) throw InvalidInput("solve_lp: A has an all-zero row " + std::to_string(i));
  }

  const double feas_tol = (tol.abs > 0 ? tol.abs : 1e-7);
  double b_scale = 1.0;
  for (double v : lp.b) b_scale = std::max(b_scale, std::abs(v));

  // Phase one: artificial columns n..n+m-1 start basic.
  const std::size_t total = n + m;
  detail::SimplexTableau tab(m, total);
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = lp.b[i] < 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = sign * lp.A(i, j);
    tab.at(i, n + i) = 1.0;
    tab.rhs(i) = sign * lp.b[i];
    tab.basis()[i] = n + i;
  }
  std::vector<double> phase1_cost(total, 0.0);
  for (std::size_t i = 0; i < m; ++i) phase1_cost[n + i] = -1.0;
  tab.set_objective(phase1_cost);

  LPSolution sol;
  std::vector<bool> allowed(total, true);
  detail::run_simplex(tab, allowed, opt, tol.max_iters, sol.iterations, 1);
  if (-tab.rhs(tab.rows()) > feas_tol * b_scale) {
    sol.status = LPStatus::infeasible;
    return sol;
  }

  // Drive remaining artificials out of the basis; drop redundant rows.
  for (std::size_t r = 0; r < tab.rows();) {
    if (tab.basis()[r] < n) {
      ++r;
      continue;
    }
    std::size_t col = n;
    double best = opt.pivot_tol;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(tab.at(r, j)) > best) {
        best = std::abs(tab.at(r, j));
        col = j;
      }
    }
    if (col == n) {
      tab.remove_row(r);
    } else {
      tab.pivot(r, col);
      ++r;
    }
  }

  for (std::size_t j = n; j < total; ++j) allowed[j] = false;
  std::vector<double> cost(total, 0.0);
  std::copy(lp.c.begin(), lp.c.end(), cost.begin());
  tab.set_objective(cost);
  if (detail::run_simplex(tab, allowed, opt, tol.max_iters, sol.iterations, 2) ==
      detail::PhaseResult::unbounded) {
    sol.status = LPStatus::unbounded;
    return sol;
  }

  sol.x.assign(n, 0.0);
  for (std::size_t r = 0; r < tab.rows(); ++r) {
    if (tab.basis()[r] < n) sol.x[tab.basis()[r]] = std::max(0.0, tab.rhs(r));
  }
  KahanSum obj;
  for (std::size_t j = 0; j < n; ++j) obj += lp.c[j] * sol.x[j];
  sol.objective = obj.value();
  sol.status = LPStatus::optimal;
  return sol;
}

}  // namespace wsnlife
