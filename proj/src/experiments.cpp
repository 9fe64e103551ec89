#include "framescale/experiments.hpp"

#include "framescale/linalg.hpp"
#include "framescale/rng.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace framescale {

double certificate_safe_radius(const Frame& frame, const Certificate& cert) {
  const MatrixXd y = 0.5 * (cert.matrix + cert.matrix.transpose());
  const double y_norm = y.norm();  // >= spectral norm, conservative
  double min_form = std::numeric_limits<double>::infinity();
  double max_phi = 0.0;
  for (int j = 0; j < frame.size(); ++j) {
    const VectorXd phi = frame.vector(j);
    min_form = std::min(min_form, phi.dot(y * phi));
    max_phi = std::max(max_phi, phi.norm());
  }
  if (min_form <= 0.0 || y_norm <= 0.0) return 0.0;
  // largest e with min_form - 2 e ||Y|| max||phi|| - e^2 ||Y|| > 0
  return -max_phi + std::sqrt(max_phi * max_phi + min_form / y_norm);
}

PerturbationReport perturbation_experiment(const Frame& frame, double epsilon,
                                           int trials, uint64_t seed,
                                           const Tolerances& tol) {
  if (epsilon < 0.0 || trials < 0)
    throw InputError("perturbation_experiment: invalid parameters");
  const ScalingOutcome base = solve_scaling(frame, tol);
  if (base.scalable())
    throw InputError("perturbation_experiment: base frame is scalable");

  // shift to the strict trace-0 form so all form values are positive
  const Certificate strict_cert =
      certificate_to_zero_trace(frame, base.certificate(), tol);

  PerturbationReport report;
  report.epsilon = epsilon;
  report.trials = trials;
  report.safe_radius = certificate_safe_radius(frame, strict_cert);

  SplitMix64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    MatrixXd rows = frame.rows();
    for (int j = 0; j < frame.size(); ++j)
      rows.row(j) += rng.ball_vector(frame.dim(), epsilon).transpose();
    bool non_scalable = false;
    try {
      Frame perturbed(rows, tol);
      if (is_frame(perturbed, tol))
        non_scalable = !solve_scaling(perturbed, tol).scalable();
    } catch (const InputError&) {
      non_scalable = false;  // degenerated below the zero-vector floor
    }
    if (non_scalable) ++report.non_scalable_count;
  }
  report.non_scalable_fraction =
      trials > 0 ? static_cast<double>(report.non_scalable_count) / trials : 0.0;
  return report;
}

EnsembleStats random_ensemble(int dim, int count, int trials, uint64_t seed,
                              bool gauss, const Tolerances& tol) {
  if (dim < 2 || count < dim || trials < 1)
    throw InputError("random_ensemble: need dim >= 2, count >= dim, trials >= 1");

  EnsembleStats stats;
  stats.dim = dim;
  stats.count = count;
  stats.trials = trials;

  SplitMix64 rng(seed);
  int scalable = 0, strict = 0;
  double margin_sum = 0.0, ms_sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Frame f = random_frame(rng, dim, count, gauss);
    const auto t0 = std::chrono::steady_clock::now();
    const StrictScalingOutcome out = solve_strict_scaling(f, tol);
    const auto t1 = std::chrono::steady_clock::now();
    ms_sum += std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (out.verdict != StrictVerdict::NotScalable) ++scalable;
    if (out.verdict == StrictVerdict::StrictlyScalable) {
      ++strict;
      margin_sum += out.margin;
    }
  }
  stats.scalable_fraction = static_cast<double>(scalable) / trials;
  stats.strict_fraction = static_cast<double>(strict) / trials;
  stats.mean_margin = strict > 0 ? margin_sum / strict : 0.0;
  stats.mean_solve_ms = ms_sum / trials;
  return stats;
}

}  // namespace framescale
