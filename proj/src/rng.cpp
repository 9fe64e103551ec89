#include "framescale/rng.hpp"

#include "framescale/linalg.hpp"

#include <Eigen/QR>

#include <cmath>

namespace framescale {

double SplitMix64::next_gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = next_double();
  while (u1 <= 0.0) u1 = next_double();
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

VectorXd SplitMix64::gaussian_vector(int n) {
  VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = next_gaussian();
  return v;
}

VectorXd SplitMix64::sphere_vector(int n) {
  VectorXd v = gaussian_vector(n);
  double norm = v.norm();
  while (norm < 1e-12) {
    v = gaussian_vector(n);
    norm = v.norm();
  }
  return v / norm;
}

VectorXd SplitMix64::ball_vector(int n, double radius) {
  const double r = radius * std::pow(next_double(), 1.0 / n);
  return r * sphere_vector(n);
}

MatrixXd SplitMix64::orthogonal_matrix(int n) {
  MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = next_gaussian();
  Eigen::HouseholderQR<MatrixXd> qr(g);
  MatrixXd q = qr.householderQ();
  const MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

Frame random_frame(SplitMix64& rng, int dim, int count, bool gauss) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    MatrixXd rows(count, dim);
    for (int j = 0; j < count; ++j)
      rows.row(j) = (gauss ? rng.gaussian_vector(dim) : rng.sphere_vector(dim))
                        .transpose();
    Frame f(rows);
    if (is_frame(f)) return f;
  }
  throw NumericalError("random_frame: could not draw a spanning set");
}

}  // namespace framescale
