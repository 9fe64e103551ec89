#pragma once

#include "framescale/types.hpp"

#include <utility>

namespace framescale {

/// M x N matrix whose row j is phi_j^T.
MatrixXd analysis_matrix(const Frame& frame);

/// Frame operator S = T^T T = sum_j phi_j phi_j^T.
SymMatrix frame_operator(const Frame& frame);

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Sweeps until all
/// off-diagonal magnitudes fall below eig_tol * ||S||_F; throws
/// NumericalError after max_jacobi_sweeps.
SpectralDecomposition jacobi_eigen(const SymMatrix& s,
                                   const Tolerances& tol = default_tolerances());

/// (A, B) = extreme eigenvalues of the frame operator. A > 0 iff the frame
/// spans R^N.
std::pair<double, double> frame_bounds(const Frame& frame,
                                       const Tolerances& tol = default_tolerances());

/// True iff the lower frame bound clears rank_tol * B.
bool is_frame(const Frame& frame, const Tolerances& tol = default_tolerances());

/// {S^{-1/2} phi_j}; the result's frame operator is I_N. Throws InputError
/// when S is singular at the rank_tol * B floor.
Frame canonical_parseval(const Frame& frame,
                         const Tolerances& tol = default_tolerances());

/// {U phi_j} for orthogonal U; rejects non-orthogonal U.
Frame apply_unitary(const Frame& frame, const MatrixXd& u,
                    const Tolerances& tol = default_tolerances());

}  // namespace framescale
