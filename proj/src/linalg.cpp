#include "framescale/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace framescale {

MatrixXd analysis_matrix(const Frame& frame) { return frame.rows(); }

SymMatrix frame_operator(const Frame& frame) {
  const MatrixXd& t = frame.rows();
  return SymMatrix(t.transpose() * t);
}

namespace {

double offdiag_norm(const MatrixXd& a) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

SpectralDecomposition jacobi_eigen(const SymMatrix& s, const Tolerances& tol) {
  const int n = s.dim();
  MatrixXd a = s.entries();
  MatrixXd u = MatrixXd::Identity(n, n);
  const double scale = a.norm();
  const double target = tol.eig_tol * std::max(scale, 1e-300);

  int sweep = 0;
  while (offdiag_norm(a) > target) {
    if (++sweep > tol.max_jacobi_sweeps) {
      std::ostringstream msg;
      msg << "Jacobi eigensolver did not converge in " << tol.max_jacobi_sweeps
          << " sweeps; off-diagonal norm " << offdiag_norm(a);
      throw NumericalError(msg.str());
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= target / std::max(1, n)) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t_rot = (tau >= 0 ? 1.0 : -1.0) /
                             (std::abs(tau) + std::sqrt(tau * tau + 1.0));
        const double c = 1.0 / std::sqrt(t_rot * t_rot + 1.0);
        const double sn = t_rot * c;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - sn * akq;
          a(k, q) = a(q, k) = sn * akp + c * akq;
        }
        a(p, p) -= t_rot * apq;
        a(q, q) += t_rot * apq;
        a(p, q) = a(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          const double ukp = u(k, p), ukq = u(k, q);
          u(k, p) = c * ukp - sn * ukq;
          u(k, q) = sn * ukp + c * ukq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i) < a(j, j); });

  SpectralDecomposition d;
  d.eigenvalues.resize(n);
  d.eigenvectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    d.eigenvalues(k) = a(order[k], order[k]);
    d.eigenvectors.col(k) = u.col(order[k]);
  }
  return d;
}

std::pair<double, double> frame_bounds(const Frame& frame,
                                       const Tolerances& tol) {
  const SpectralDecomposition d = jacobi_eigen(frame_operator(frame), tol);
  return {d.eigenvalues(0), d.eigenvalues(d.eigenvalues.size() - 1)};
}

bool is_frame(const Frame& frame, const Tolerances& tol) {
  const auto [a, b] = frame_bounds(frame, tol);
  return a >= tol.rank_tol * std::max(b, 0.0) && b > 0.0;
}

Frame canonical_parseval(const Frame& frame, const Tolerances& tol) {
  const SpectralDecomposition d = jacobi_eigen(frame_operator(frame), tol);
  const double b = d.eigenvalues(d.eigenvalues.size() - 1);
  const double floor = tol.rank_tol * b;
  VectorXd inv_sqrt(d.eigenvalues.size());
  for (Eigen::Index k = 0; k < d.eigenvalues.size(); ++k) {
    if (d.eigenvalues(k) <= floor) throw InputError("not a frame: singular frame operator");
    inv_sqrt(k) = 1.0 / std::sqrt(d.eigenvalues(k));
  }
  const MatrixXd s_inv_half =
      d.eigenvectors * inv_sqrt.asDiagonal() * d.eigenvectors.transpose();
  return Frame(frame.rows() * s_inv_half, tol);  // rows phi_j^T S^{-1/2}
}

Frame apply_unitary(const Frame& frame, const MatrixXd& u,
                    const Tolerances& tol) {
  if (u.rows() != frame.dim() || u.cols() != frame.dim())
    throw InputError("apply_unitary: dimension mismatch");
  const MatrixXd gram =
      u.transpose() * u - MatrixXd::Identity(u.rows(), u.cols());
  if (gram.norm() > tol.orth_tol)
    throw InputError("apply_unitary: matrix is not orthogonal");
  return Frame(frame.rows() * u.transpose(), tol);
}

}  // namespace framescale
