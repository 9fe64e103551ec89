#include "framescale/simplex.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <vector>

namespace framescale {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kReducedCostEps = 1e-9;

struct Tableau {
  MatrixXd t;               // m x (n + m + 1), artificials then rhs
  std::vector<int> basis;   // basic column per row
  int n = 0;                // structural columns
  int m = 0;

  double rhs(int i) const { return t(i, n + m); }

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int i = 0; i < m; ++i) {
      if (i == row) continue;
      const double f = t(i, col);
      if (f != 0.0) t.row(i) -= f * t.row(row);
    }
    basis[row] = col;
  }
};

// Bland's rule minimization over the columns enabled in `allowed`.
// Returns false when the problem is unbounded below.
bool run_simplex(Tableau& tb, const VectorXd& cost,
                 const std::vector<bool>& allowed, int max_pivots) {
  const int ncols = tb.n + tb.m;
  for (int iter = 0; iter < max_pivots; ++iter) {
    // reduced costs r_j = c_j - c_B^T T(:,j)
    int enter = -1;
    for (int j = 0; j < ncols; ++j) {
      if (!allowed[j]) continue;
      double r = cost(j);
      for (int i = 0; i < tb.m; ++i) r -= cost(tb.basis[i]) * tb.t(i, j);
      if (r < -kReducedCostEps) {
        enter = j;
        break;  // Bland: smallest eligible index
      }
    }
    if (enter < 0) return true;

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < tb.m; ++i) {
      const double a = tb.t(i, enter);
      if (a <= kPivotEps) continue;
      const double ratio = tb.rhs(i) / a;
      if (ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 &&
           (leave < 0 || tb.basis[i] < tb.basis[leave]))) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave < 0) return false;
    tb.pivot(leave, enter);
  }
  throw NumericalError("simplex pivot limit exhausted");
}

VectorXd basis_dual(const Tableau& tb, const VectorXd& cost,
                    const VectorXd& row_flip) {
  // Artificial columns started as I, so they now hold B^{-1};
  // y = c_B^T B^{-1}, mapped back to the original row orientation.
  VectorXd y(tb.m);
  for (int i = 0; i < tb.m; ++i) {
    double v = 0.0;
    for (int k = 0; k < tb.m; ++k) v += cost(tb.basis[k]) * tb.t(k, tb.n + i);
    y(i) = row_flip(i) * v;
  }
  return y;
}

void check_basis_condition(const Tableau& tb, const MatrixXd& a_flipped) {
  MatrixXd b(tb.m, tb.m);
  for (int i = 0; i < tb.m; ++i) {
    const int col = tb.basis[i];
    if (col < tb.n)
      b.col(i) = a_flipped.col(col);
    else
      b.col(i) = VectorXd::Unit(tb.m, col - tb.n);
  }
  Eigen::JacobiSVD<MatrixXd> svd(b);
  const double smin = svd.singularValues()(tb.m - 1);
  const double smax = svd.singularValues()(0);
  if (smin <= 0.0 || smax / smin > 1e12)
    throw NumericalError("simplex basis too ill-conditioned");
}

}  // namespace

LpResult solve_lp(const MatrixXd& a, const VectorXd& b, const VectorXd& c,
                  const Tolerances& tol) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  if (b.size() != m || c.size() != n)
    throw InputError("solve_lp: dimension mismatch");

  VectorXd row_flip(m);
  MatrixXd a_flipped = a;
  VectorXd b_flipped = b;
  for (int i = 0; i < m; ++i) {
    row_flip(i) = (b(i) < 0.0) ? -1.0 : 1.0;
    a_flipped.row(i) *= row_flip(i);
    b_flipped(i) *= row_flip(i);
  }

  Tableau tb;
  tb.n = n;
  tb.m = m;
  tb.t.resize(m, n + m + 1);
  tb.t.leftCols(n) = a_flipped;
  tb.t.middleCols(n, m) = MatrixXd::Identity(m, m);
  tb.t.col(n + m) = b_flipped;
  tb.basis.resize(m);
  for (int i = 0; i < m; ++i) tb.basis[i] = n + i;

  const int max_pivots = 5000 + 50 * (n + m);

  // Phase 1: minimize the artificial sum.
  VectorXd phase1_cost = VectorXd::Zero(n + m);
  phase1_cost.tail(m).setOnes();
  std::vector<bool> all_cols(n + m, true);
  run_simplex(tb, phase1_cost, all_cols, max_pivots);  // never unbounded

  double phase1_obj = 0.0;
  for (int i = 0; i < m; ++i)
    if (tb.basis[i] >= n) phase1_obj += tb.rhs(i);

  LpResult result;
  if (phase1_obj > tol.feas_tol * std::max(1.0, b.norm())) {
    result.status = LpStatus::Infeasible;
    result.objective = phase1_obj;
    result.dual = basis_dual(tb, phase1_cost, row_flip);
    return result;
  }

  // Drive basic artificials out where a structural pivot exists; rows
  // without one are redundant and stay inert (all-zero structural row).
  for (int i = 0; i < m; ++i) {
    if (tb.basis[i] < n) continue;
    for (int j = 0; j < n; ++j) {
      if (std::abs(tb.t(i, j)) > 1e-8) {
        tb.pivot(i, j);
        break;
      }
    }
  }

  // Phase 2 over structural columns only.
  VectorXd phase2_cost = VectorXd::Zero(n + m);
  phase2_cost.head(n) = c;
  std::vector<bool> structural(n + m, false);
  for (int j = 0; j < n; ++j) structural[j] = true;
  if (!run_simplex(tb, phase2_cost, structural, max_pivots)) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  check_basis_condition(tb, a_flipped);

  result.status = LpStatus::Optimal;
  result.x = VectorXd::Zero(n);
  for (int i = 0; i < m; ++i)
    if (tb.basis[i] < n) result.x(tb.basis[i]) = std::max(0.0, tb.rhs(i));
  result.objective = c.dot(result.x);
  result.dual = basis_dual(tb, phase2_cost, row_flip);
  return result;
}

}  // namespace framescale
