#include "framescale/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace framescale {

ExtensionResult extend_to_orthogonal_basis(const Frame& frame,
                                           const Weights& weights,
                                           const Tolerances& tol) {
  const int n = frame.dim();
  const int m = frame.size();
  if (m < n) throw InputError("extend_to_orthogonal_basis: fewer vectors than dimensions");
  if (weights.values.size() != m)
    throw InputError("extend_to_orthogonal_basis: weight count mismatch");
  if (weights.values.minCoeff() < std::sqrt(tol.strict_floor))
    throw InputError("extend_to_orthogonal_basis: weights must be strictly positive");
  if (verify_weights(frame, weights) > tol.parseval_tol)
    throw InputError("extend_to_orthogonal_basis: weights are not Parseval");

  const VectorXd c = weights.values;
  const MatrixXd t = frame.rows();
  const MatrixXd q = c.asDiagonal() * t;  // M x N, orthonormal columns

  // Orthonormal basis of (ran DT)^perp: residuals of the standard basis
  // against the columns of DT, keep the M-N largest, modified Gram-Schmidt
  // with one re-orthogonalization pass.
  const int comp_dim = m - n;
  MatrixXd u(m, comp_dim);
  if (comp_dim > 0) {
    MatrixXd residuals = MatrixXd::Identity(m, m) - q * q.transpose();
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
      return residuals.col(i).norm() > residuals.col(j).norm();
    });

    int filled = 0;
    for (int idx : order) {
      if (filled == comp_dim) break;
      VectorXd v = residuals.col(idx);
      for (int pass = 0; pass < 2; ++pass) {
        v -= q * (q.transpose() * v);
        for (int p = 0; p < filled; ++p) v -= u.col(p).dot(v) * u.col(p);
      }
      const double norm = v.norm();
      if (norm < 1e-8) continue;
      u.col(filled++) = v / norm;
    }
    if (filled < comp_dim)
      throw NumericalError("extend_to_orthogonal_basis: complement basis breakdown");
  }

  ExtensionResult result;
  result.psi = c.cwiseInverse().asDiagonal() * u;  // M x (M-N)
  result.coupling_gram = t * t.transpose() + result.psi * result.psi.transpose();
  result.diagonal = result.coupling_gram.diagonal();
  return result;
}

double verify_extension(const Frame& frame, const ExtensionResult& ext,
                        const Tolerances& tol) {
  const int m = frame.size();
  if (ext.psi.rows() != m)
    throw InputError("verify_extension: dimension mismatch");
  const MatrixXd gram =
      frame.rows() * frame.rows().transpose() + ext.psi * ext.psi.transpose();
  double max_offdiag = 0.0;
  for (int i = 0; i < m; ++i) {
    if (gram(i, i) < tol.strict_floor)
      return std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j)
      if (i != j) max_offdiag = std::max(max_offdiag, std::abs(gram(i, j)));
  }
  return max_offdiag;
}

}  // namespace framescale
