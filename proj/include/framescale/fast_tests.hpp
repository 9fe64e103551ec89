#pragma once

#include "framescale/types.hpp"

#include <optional>
#include <set>
#include <vector>

namespace framescale {

enum class NPlusOneVerdict { StrictlyScalable, NotStrictlyScalable };

struct NPlusOneViolation {
  int i = 0;  // 1-based
  int j = 0;
  double lhs = 0.0;  // <phi_i,phi_k><phi_k,phi_j>
  double rhs = 0.0;  // -c <phi_i,phi_j>
};

struct NPlusOneReport {
  std::set<int> orthogonal_index_set;  // 1-based
  std::optional<int> witness_index;    // the chosen k, 1-based
  std::optional<double> constant;      // common c > 0
  NPlusOneVerdict verdict = NPlusOneVerdict::NotStrictlyScalable;
  std::vector<NPlusOneViolation> violations;
};

/// 2D quadrant-cone witness: an orthonormal pair whose open quadrant cone
/// contains every frame vector up to sign.
struct QuadrantConeWitness {
  VectorXd axis;      // unit bisector of the cone
  MatrixXd basis;     // columns e_minus, e_plus
  double gap = 0.0;   // angular slack of the doubled-angle arc
};

/// Indices k with <phi_k, phi_j> = 0 for all j != k (relative gram_tol).
std::set<int> orthogonal_index_set(const Frame& frame,
                                   const Tolerances& tol = default_tolerances());

/// Closed-form strict-scalability test for M = N+1 via the pairwise
/// inner-product identity <phi_i,phi_k><phi_k,phi_j> = -c <phi_i,phi_j>.
/// Throws InputError unless M = N+1.
NPlusOneReport nplus1_test(const Frame& frame,
                           const Tolerances& tol = default_tolerances());

/// Doubled-angle search for an open quadrant cone containing all vectors of
/// a 2D frame (up to sign). A witness exists iff the frame is not scalable.
std::optional<QuadrantConeWitness> quadrant_cone_test_2d(
    const Frame& frame, const Tolerances& tol = default_tolerances());

}  // namespace framescale
