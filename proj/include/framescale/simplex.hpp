#pragma once

#include "framescale/types.hpp"

namespace framescale {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  VectorXd x;        // primal solution (Optimal only)
  VectorXd dual;     // Optimal: dual of the final LP. Infeasible: phase-1
                     // dual y with y^T A <= 0 and y^T b > 0 (Farkas direction).
  double objective = 0.0;  // Optimal: c^T x. Infeasible: phase-1 optimum.
};

/// Two-phase dense simplex with Bland's anti-cycling rule for
///   min c^T x  s.t.  A x = b, x >= 0.
/// Redundant rows are dropped after phase 1; duals for dropped rows are 0.
/// Throws NumericalError on an ill-conditioned final basis (condition
/// estimate > 1e12) or pivot-limit exhaustion.
LpResult solve_lp(const MatrixXd& a, const VectorXd& b, const VectorXd& c,
                  const Tolerances& tol = default_tolerances());

}  // namespace framescale
