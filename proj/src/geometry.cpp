#include "framescale/geometry.hpp"

#include "framescale/linalg.hpp"

#include <cmath>
#include <vector>

namespace framescale {

QuadricCone make_cone(MatrixXd basis, VectorXd coeffs, const Tolerances& tol) {
  const int n = static_cast<int>(basis.rows());
  if (basis.cols() != n || coeffs.size() != n - 1)
    throw InputError("make_cone: inconsistent dimensions");
  const MatrixXd gram =
      basis.transpose() * basis - MatrixXd::Identity(n, n);
  if (gram.norm() > tol.orth_tol)
    throw InputError("make_cone: basis is not orthogonal");
  const double sum = coeffs.sum();
  if (std::abs(sum - 1.0) > 1e-9)
    throw InputError("make_cone: coefficients must sum to 1");
  coeffs /= sum;
  if (coeffs.cwiseAbs().minCoeff() < tol.coeff_floor)
    throw InputError("make_cone: coefficient below floor");
  return {std::move(basis), std::move(coeffs)};
}

QuadricCone cone_from_certificate(const Certificate& cert,
                                  const Tolerances& tol) {
  const MatrixXd y = 0.5 * (cert.matrix + cert.matrix.transpose());
  const int n = static_cast<int>(y.rows());
  const double scale = y.norm();
  if (scale <= 0.0) throw InputError("cone_from_certificate: zero matrix");
  if (std::abs(y.trace()) > 1e-12 * std::max(1.0, scale))
    throw InputError("cone_from_certificate: certificate must have zero trace");

  SpectralDecomposition d = jacobi_eigen(SymMatrix(y), tol);
  VectorXd lam = d.eigenvalues;
  MatrixXd u = d.eigenvectors;

  // Trace-preserving perturbation of (near-)zero eigenvalues; budget kept
  // under half the smallest strict form value so no classification flips.
  const double floor = tol.coeff_floor * scale;
  double eps = floor;
  if (cert.form_values.size() > 0 && cert.form_values.minCoeff() > 0.0)
    eps = std::min(eps, 0.25 * cert.form_values.minCoeff());
  int n_degenerate = 0;
  for (int k = 0; k < n; ++k) {
    if (std::abs(lam(k)) < floor) {
      const double sign = (++n_degenerate % 2 == 0) ? -1.0 : 1.0;
      lam(k) = sign * eps;
    }
  }
  if (n_degenerate == n)
    throw InputError("cone_from_certificate: degenerate certificate");
  // absorb the accumulated trace error into the largest eigenvalue
  int big = 0;
  for (int k = 1; k < n; ++k)
    if (std::abs(lam(k)) > std::abs(lam(big))) big = k;
  lam(big) -= lam.sum();

  // put a positive eigenvalue last
  int pos = -1;
  for (int k = 0; k < n; ++k)
    if (lam(k) > 0 && (pos < 0 || lam(k) > lam(pos))) pos = k;
  if (pos < 0)
    throw InputError("cone_from_certificate: no positive eigenvalue");
  std::swap(lam(pos), lam(n - 1));
  u.col(pos).swap(u.col(n - 1));

  VectorXd coeffs(n - 1);
  for (int k = 0; k < n - 1; ++k) coeffs(k) = -lam(k) / lam(n - 1);
  coeffs /= coeffs.sum();
  return make_cone(std::move(u), std::move(coeffs), tol);
}

namespace {

double cone_gap(const QuadricCone& cone, const VectorXd& x) {
  const int n = cone.dim();
  const VectorXd proj = cone.basis.transpose() * x;
  double g = proj(n - 1) * proj(n - 1);
  for (int k = 0; k < n - 1; ++k) g -= cone.coeffs(k) * proj(k) * proj(k);
  return g;
}

}  // namespace

ConeRegion classify(const QuadricCone& cone, const VectorXd& x,
                    const Tolerances& tol) {
  if (x.size() != cone.dim()) throw InputError("classify: dimension mismatch");
  const double g = cone_gap(cone, x);
  const double band = tol.surface_band * x.squaredNorm();
  if (g > band) return ConeRegion::Interior;
  if (g < -band) return ConeRegion::Exterior;
  return ConeRegion::Surface;
}

bool verify_geometric_characterization(const Frame& frame,
                                       const QuadricCone& cone,
                                       const Tolerances& tol) {
  if (frame.dim() != cone.dim()) return false;
  for (int j = 0; j < frame.size(); ++j)
    if (classify(cone, frame.vector(j), tol) != ConeRegion::Interior)
      return false;
  return true;
}

QuadricCone quadrant_cone_2d(double angle) {
  MatrixXd basis(2, 2);
  basis << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  VectorXd coeffs(1);
  coeffs << 1.0;
  return make_cone(std::move(basis), std::move(coeffs));
}

QuadricCone rotate(const QuadricCone& cone, const MatrixXd& u,
                   const Tolerances& tol) {
  const MatrixXd gram =
      u.transpose() * u - MatrixXd::Identity(u.rows(), u.cols());
  if (gram.norm() > tol.orth_tol)
    throw InputError("rotate: matrix is not orthogonal");
  return {u * cone.basis, cone.coeffs};
}

std::vector<VectorXd> sample_surface(const QuadricCone& cone, int resolution) {
  if (resolution < 1) throw InputError("sample_surface: resolution must be positive");
  const int n = cone.dim();
  std::vector<VectorXd> points;

  if (n == 2) {
    // a_1 = 1: the surface is the pair of lines spanned by (e_1 +- e_2)/sqrt(2)
    const VectorXd d1 = (cone.basis.col(0) + cone.basis.col(1)) / std::sqrt(2.0);
    const VectorXd d2 = (cone.basis.col(0) - cone.basis.col(1)) / std::sqrt(2.0);
    for (int s = 1; s <= resolution; ++s) {
      const double r = static_cast<double>(s) / resolution;
      points.push_back(r * d1);
      points.push_back(-r * d1);
      points.push_back(r * d2);
      points.push_back(-r * d2);
    }
    return points;
  }

  if (n == 3) {
    const double a1 = cone.coeffs(0);
    const double a2 = cone.coeffs(1);
    const int n_heights = 2 * resolution;
    const int n_angles = 4 * resolution;
    for (int hi = 0; hi < n_heights; ++hi) {
      const double h = -1.0 + (2.0 * hi + 1.0) / n_heights;
      if (std::abs(h) < 1e-9) continue;
      for (int ai = 0; ai < n_angles; ++ai) {
        const double t = 2.0 * M_PI * ai / n_angles;
        const double q = a1 * std::cos(t) * std::cos(t) +
                         a2 * std::sin(t) * std::sin(t);
        if (q <= 1e-12) continue;  // no real section along this angle
        const double r = std::abs(h) / std::sqrt(q);
        VectorXd local(3);
        local << r * std::cos(t), r * std::sin(t), h;
        points.push_back(cone.basis * local);
      }
    }
    return points;
  }

  throw InputError("sample_surface: unsupported dimension (N must be 2 or 3)");
}

}  // namespace framescale
