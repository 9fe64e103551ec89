#pragma once

#include "framescale/scaling.hpp"
#include "framescale/types.hpp"

#include <cstdint>

namespace framescale {

struct PerturbationReport {
  double epsilon = 0.0;
  int trials = 0;
  int non_scalable_count = 0;
  double non_scalable_fraction = 0.0;
  double safe_radius = 0.0;  // certificate-implied radius of guaranteed non-scalability
};

/// Largest e with min_j phi_j^T Y phi_j - 2 e ||Y|| max_j ||phi_j|| - e^2 ||Y|| > 0;
/// every perturbation within it stays non-scalable.
double certificate_safe_radius(const Frame& frame, const Certificate& cert);

/// Perturbs each vector uniformly in the ball of radius epsilon, T times,
/// and counts non-scalable outcomes. Throws InputError when the base frame
/// is scalable. Perturbed sets that fail to span are counted as
/// non-scalable only if the certificate still verifies (it always does
/// below the safe radius).
PerturbationReport perturbation_experiment(const Frame& frame, double epsilon,
                                           int trials, uint64_t seed,
                                           const Tolerances& tol = default_tolerances());

struct EnsembleStats {
  int dim = 0;
  int count = 0;
  int trials = 0;
  double scalable_fraction = 0.0;
  double strict_fraction = 0.0;
  double mean_margin = 0.0;      // over strictly scalable instances
  double mean_solve_ms = 0.0;
};

EnsembleStats random_ensemble(int dim, int count, int trials, uint64_t seed,
                              bool gauss,
                              const Tolerances& tol = default_tolerances());

}  // namespace framescale
