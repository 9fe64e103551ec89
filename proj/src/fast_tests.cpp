#include "framescale/fast_tests.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace framescale {

std::set<int> orthogonal_index_set(const Frame& frame, const Tolerances& tol) {
  const MatrixXd gram = frame.rows() * frame.rows().transpose();
  std::set<int> out;
  for (int k = 0; k < frame.size(); ++k) {
    bool isolated = true;
    for (int j = 0; j < frame.size() && isolated; ++j) {
      if (j == k) continue;
      if (std::abs(gram(k, j)) >
          tol.gram_tol * std::sqrt(gram(k, k) * gram(j, j)))
        isolated = false;
    }
    if (isolated) out.insert(k + 1);
  }
  return out;
}

NPlusOneReport nplus1_test(const Frame& frame, const Tolerances& tol) {
  const int n = frame.dim();
  const int m = frame.size();
  if (m != n + 1)
    throw InputError("nplus1_test: frame must have exactly N+1 vectors");

  NPlusOneReport report;
  report.orthogonal_index_set = orthogonal_index_set(frame, tol);

  // N+1 pairwise-orthogonal nonzero vectors cannot exist in R^N, so a
  // non-isolated index always exists.
  int k = -1;
  for (int j = 0; j < m; ++j) {
    if (!report.orthogonal_index_set.count(j + 1)) {
      k = j;
      break;
    }
  }
  report.witness_index = k + 1;

  const MatrixXd gram = frame.rows() * frame.rows().transpose();
  VectorXd norms(m);
  for (int j = 0; j < m; ++j) norms(j) = std::sqrt(gram(j, j));

  bool ok = true;
  std::optional<double> c_ref;
  int ref_i = 0, ref_j = 0;
  double ref_lhs = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == k) continue;
    for (int j = i + 1; j < m; ++j) {
      if (j == k) continue;
      const double g = gram(i, j);
      const double lhs = gram(i, k) * gram(k, j);
      const double g_scale = norms(i) * norms(j);
      const double lhs_scale = norms(i) * norms(j) * gram(k, k);
      if (std::abs(g) <= tol.gram_tol * g_scale) {
        // zero pair: the identity forces the left side to vanish too
        if (std::abs(lhs) > tol.nplus1_tol * std::max(1.0, lhs_scale)) {
          ok = false;
          report.violations.push_back({i + 1, j + 1, lhs, 0.0});
        }
        continue;
      }
      const double cand = -lhs / g;
      if (!c_ref) {
        c_ref = cand;
        ref_i = i;
        ref_j = j;
        ref_lhs = lhs;
      } else if (std::abs(cand - *c_ref) >
                 tol.nplus1_tol * std::max(1.0, std::abs(*c_ref))) {
        ok = false;
        report.violations.push_back({i + 1, j + 1, lhs, -*c_ref * g});
      }
    }
  }

  if (c_ref) {
    if (*c_ref <= 0.0) {
      // the identity admits no positive constant
      ok = false;
      report.violations.push_back({ref_i + 1, ref_j + 1, ref_lhs, 0.0});
    }
    report.constant = c_ref;
  } else if (ok) {
    // No constraining pair: any c > 0 witnesses. Report the minimal-norm
    // reconstruction v with v_k = sqrt(c), v_j = -<phi_j,phi_k>/v_k.
    double sum_sq = 0.0;
    for (int j = 0; j < m; ++j)
      if (j != k) sum_sq += gram(j, k) * gram(j, k);
    report.constant = std::sqrt(sum_sq);
  }

  report.verdict = ok ? NPlusOneVerdict::StrictlyScalable
                      : NPlusOneVerdict::NotStrictlyScalable;
  return report;
}

std::optional<QuadrantConeWitness> quadrant_cone_test_2d(const Frame& frame,
                                                         const Tolerances& tol) {
  (void)tol;
  if (frame.dim() != 2)
    throw InputError("quadrant_cone_test_2d: frame dimension must be 2");

  const double two_pi = 2.0 * M_PI;
  std::vector<double> doubled;
  doubled.reserve(frame.size());
  for (int j = 0; j < frame.size(); ++j) {
    const VectorXd phi = frame.vector(j);
    double a = 2.0 * std::atan2(phi(1), phi(0));
    a = std::fmod(a, two_pi);
    if (a < 0) a += two_pi;
    doubled.push_back(a);
  }
  std::sort(doubled.begin(), doubled.end());

  // All doubled angles inside an open semicircle <=> some circular gap
  // exceeds pi.
  double best_gap = doubled.front() + two_pi - doubled.back();
  double gap_start = doubled.back();
  for (size_t i = 0; i + 1 < doubled.size(); ++i) {
    const double gap = doubled[i + 1] - doubled[i];
    if (gap > best_gap) {
      best_gap = gap;
      gap_start = doubled[i];
    }
  }
  if (best_gap <= M_PI + 1e-12) return std::nullopt;

  const double empty_center = gap_start + 0.5 * best_gap;
  const double axis_angle = 0.5 * (empty_center + M_PI);

  QuadrantConeWitness w;
  w.axis.resize(2);
  w.axis << std::cos(axis_angle), std::sin(axis_angle);
  w.basis.resize(2, 2);
  w.basis.col(0) << std::cos(axis_angle - M_PI / 4),
      std::sin(axis_angle - M_PI / 4);
  w.basis.col(1) << std::cos(axis_angle + M_PI / 4),
      std::sin(axis_angle + M_PI / 4);
  w.gap = best_gap - M_PI;
  return w;
}

}  // namespace framescale
