#include "framescale/scaling.hpp"

#include "framescale/linalg.hpp"
#include "framescale/rng.hpp"
#include "framescale/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace framescale {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

VectorXd sym_vectorize(const MatrixXd& s) {
  const int n = static_cast<int>(s.rows());
  VectorXd v(n * (n + 1) / 2);
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      v(k++) = (i == j) ? s(i, j) : kSqrt2 * s(i, j);
  return v;
}

MatrixXd sym_devectorize(const VectorXd& v, int n) {
  MatrixXd s(n, n);
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double x = (i == j) ? v(k) : v(k) / kSqrt2;
      s(i, j) = s(j, i) = x;
      ++k;
    }
  return s;
}

std::pair<MatrixXd, VectorXd> build_feasibility_system(const Frame& frame) {
  const int n = frame.dim();
  const int m = frame.size();
  MatrixXd a(n * (n + 1) / 2, m);
  for (int j = 0; j < m; ++j) {
    const VectorXd phi = frame.vector(j);
    a.col(j) = sym_vectorize(phi * phi.transpose());
  }
  return {a, sym_vectorize(MatrixXd::Identity(n, n))};
}

double verify_weights(const Frame& frame, const Weights& w) {
  if (w.values.size() != frame.size())
    throw InputError("verify_weights: length mismatch");
  const int n = frame.dim();
  MatrixXd s = MatrixXd::Zero(n, n);
  for (int j = 0; j < frame.size(); ++j) {
    const VectorXd phi = frame.vector(j);
    s += w.values(j) * w.values(j) * phi * phi.transpose();
  }
  return (s - MatrixXd::Identity(n, n)).norm();
}

bool verify_certificate(const Frame& frame, const Certificate& cert,
                        const Tolerances& tol) {
  if (cert.matrix.rows() != frame.dim())
    throw InputError("verify_certificate: dimension mismatch");
  const MatrixXd y = 0.5 * (cert.matrix + cert.matrix.transpose());
  const double scale = y.norm();
  if (scale <= 0.0) return false;
  const double trace = y.trace() / scale;
  double min_form = std::numeric_limits<double>::infinity();
  for (int j = 0; j < frame.size(); ++j) {
    const VectorXd phi = frame.vector(j);
    min_form = std::min(min_form, phi.dot(y * phi) / scale);
  }
  if (cert.form == CertificateForm::NegativeTrace)
    return trace <= -tol.cert_margin && min_form >= -tol.cert_slack;
  return std::abs(trace) <= 1e-12 && min_form > 0.0;
}

namespace {

Certificate make_certificate(const Frame& frame, const VectorXd& y_matrix_vec) {
  Certificate cert;
  MatrixXd y = sym_devectorize(y_matrix_vec, frame.dim());
  y /= y.norm();
  cert.matrix = y;
  cert.form = CertificateForm::NegativeTrace;
  cert.trace = y.trace();
  cert.form_values.resize(frame.size());
  for (int j = 0; j < frame.size(); ++j) {
    const VectorXd phi = frame.vector(j);
    cert.form_values(j) = phi.dot(y * phi);
  }
  return cert;
}

Weights make_weights(const Frame& frame, const VectorXd& x) {
  Weights w;
  w.values = x.cwiseMax(0.0).cwiseSqrt();
  w.parseval_residual = verify_weights(frame, w);
  return w;
}

// M = N short-circuit: a basis is scalable iff it is orthogonal.
bool orthogonal_basis_weights(const Frame& frame, const Tolerances& tol,
                              Weights* out) {
  const MatrixXd gram = frame.rows() * frame.rows().transpose();
  for (int i = 0; i < frame.size(); ++i)
    for (int j = i + 1; j < frame.size(); ++j)
      if (std::abs(gram(i, j)) >
          tol.gram_tol * std::sqrt(gram(i, i) * gram(j, j)))
        return false;
  VectorXd x(frame.size());
  for (int j = 0; j < frame.size(); ++j) x(j) = 1.0 / gram(j, j);
  *out = make_weights(frame, x);
  return true;
}

}  // namespace

ScalingOutcome solve_scaling(const Frame& frame, const Tolerances& tol) {
  if (!is_frame(frame, tol))
    throw InputError("solve_scaling: input is not a frame");

  if (frame.size() == frame.dim()) {
    Weights w;
    if (orthogonal_basis_weights(frame, tol, &w)) return {w};
  }

  const auto [a, b] = build_feasibility_system(frame);
  const LpResult lp =
      solve_lp(a, b, VectorXd::Zero(frame.size()), tol);
  if (lp.status == LpStatus::Infeasible)
    return {make_certificate(frame, -lp.dual)};
  if (lp.status != LpStatus::Optimal)
    throw NumericalError("solve_scaling: unexpected LP status");
  return {make_weights(frame, lp.x)};
}

StrictScalingOutcome solve_strict_scaling(const Frame& frame,
                                          const Tolerances& tol) {
  if (!is_frame(frame, tol))
    throw InputError("solve_strict_scaling: input is not a frame");

  const auto [a, b] = build_feasibility_system(frame);
  const int m = frame.size();

  // Substitute x_j = t + s_j: maximize t over t, s >= 0 with
  // (A 1) t + A s = b.
  MatrixXd a_ext(a.rows(), m + 1);
  a_ext.col(0) = a.rowwise().sum();
  a_ext.rightCols(m) = a;
  VectorXd cost = VectorXd::Zero(m + 1);
  cost(0) = -1.0;

  const LpResult lp = solve_lp(a_ext, b, cost, tol);

  StrictScalingOutcome out;
  if (lp.status == LpStatus::Infeasible) {
    out.verdict = StrictVerdict::NotScalable;
    out.certificate = make_certificate(frame, -lp.dual);
    return out;
  }
  if (lp.status != LpStatus::Optimal)
    throw NumericalError("solve_strict_scaling: unexpected LP status");

  const double t_star = lp.x(0);
  VectorXd x = lp.x.tail(m).array() + t_star;
  out.margin = t_star;
  out.weights = make_weights(frame, x);
  if (t_star >= tol.strict_floor) {
    out.verdict = StrictVerdict::StrictlyScalable;
  } else {
    out.verdict = StrictVerdict::ScalableNotStrictly;
    for (int j = 0; j < m; ++j)
      if (x(j) <= tol.strict_floor) out.zero_weight_indices.push_back(j + 1);
  }
  return out;
}

Certificate certificate_to_zero_trace(const Frame& frame,
                                      const Certificate& cert,
                                      const Tolerances& tol) {
  if (cert.form != CertificateForm::NegativeTrace)
    throw InputError("certificate_to_zero_trace: input already in trace-0 form");
  if (!verify_certificate(frame, cert, tol))
    throw InputError("certificate_to_zero_trace: certificate does not verify");

  const int n = frame.dim();
  const MatrixXd y0 = 0.5 * (cert.matrix + cert.matrix.transpose());
  const double alpha = -y0.trace();
  MatrixXd y = y0 + (alpha / n) * MatrixXd::Identity(n, n);
  // kill residual roundoff on the diagonal
  const double resid = y.trace() / n;
  y.diagonal().array() -= resid;

  Certificate out;
  out.matrix = y;
  out.form = CertificateForm::ZeroTrace;
  out.trace = 0.0;
  out.form_values.resize(frame.size());
  for (int j = 0; j < frame.size(); ++j) {
    const VectorXd phi = frame.vector(j);
    out.form_values(j) = phi.dot(y * phi);
  }
  return out;
}

std::pair<VectorXd, double> nnls_oracle(const Frame& frame, uint64_t seed,
                                        const Tolerances& tol) {
  (void)tol;
  const auto [a, b] = build_feasibility_system(frame);
  const int m = frame.size();
  const MatrixXd ata = a.transpose() * a;
  const VectorXd atb = a.transpose() * b;
  const double lipschitz = std::max(1e-12, ata.norm());

  SplitMix64 rng(seed ^ 0x5eedf00dULL);
  VectorXd best_x = VectorXd::Zero(m);
  double best_obj = (a * best_x - b).squaredNorm();

  constexpr int kRestarts = 10;
  constexpr int kMaxIter = 5000;
  for (int restart = 0; restart < kRestarts; ++restart) {
    VectorXd x(m);
    if (restart == 0)
      x.setZero();
    else
      for (int j = 0; j < m; ++j) x(j) = rng.next_double();

    VectorXd grad = 2.0 * (ata * x - atb);
    double step = 1.0 / (2.0 * lipschitz);
    int stall = 0;
    double prev_obj = std::numeric_limits<double>::infinity();
    for (int it = 0; it < kMaxIter; ++it) {
      const VectorXd x_new = (x - step * grad).cwiseMax(0.0);
      const VectorXd grad_new = 2.0 * (ata * x_new - atb);
      const VectorXd s = x_new - x;
      const VectorXd dg = grad_new - grad;
      const double sy = s.dot(dg);
      step = (sy > 1e-300) ? s.dot(s) / sy : 1.0 / (2.0 * lipschitz);
      x = x_new;
      grad = grad_new;

      const double obj = (a * x - b).squaredNorm();
      if (obj < prev_obj - 1e-16)
        stall = 0;
      else if (++stall > 200)
        break;
      prev_obj = std::min(prev_obj, obj);
      if ((x - (x - grad).cwiseMax(0.0)).lpNorm<Eigen::Infinity>() < 1e-13)
        break;
    }
    const double obj = (a * x - b).squaredNorm();
    if (obj < best_obj) {
      best_obj = obj;
      best_x = x;
    }
  }
  return {best_x, best_obj};
}

}  // namespace framescale
