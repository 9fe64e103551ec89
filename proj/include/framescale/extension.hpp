#pragma once

#include "framescale/scaling.hpp"
#include "framescale/types.hpp"

namespace framescale {

/// Companion frame Psi in R^{M-N} making {phi_j (+) psi_j} an orthogonal
/// basis of R^M.
struct ExtensionResult {
  MatrixXd psi;           // M x (M-N), row j is psi_j^T (zero columns if M = N)
  VectorXd diagonal;      // d_j = ||phi_j||^2 + ||psi_j||^2 = c_j^{-2}
  MatrixXd coupling_gram; // M x M audit Gram of the extended vectors
};

/// Builds Psi from strictly positive Parseval weights: the rows of
/// D^{-1} U where U is an orthonormal basis of the orthogonal complement of
/// the column space of D T. Throws InputError on non-Parseval or
/// non-strict weights, NumericalError on orthogonalization breakdown.
ExtensionResult extend_to_orthogonal_basis(const Frame& frame, const Weights& weights,
                                           const Tolerances& tol = default_tolerances());

/// Recomputes the coupling Gram from scratch; returns the largest absolute
/// off-diagonal entry (+inf when a diagonal entry falls below strict_floor).
double verify_extension(const Frame& frame, const ExtensionResult& ext,
                        const Tolerances& tol = default_tolerances());

}  // namespace framescale
