#pragma once

#include "framescale/types.hpp"

#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace framescale {

/// Nonnegative scaling factors c_j making {c_j phi_j} Parseval.
struct Weights {
  VectorXd values;
  double parseval_residual = 0.0;
};

enum class CertificateForm { NegativeTrace, ZeroTrace };

/// Symmetric witness of non-scalability: tr(Y) < 0 with phi_j^T Y phi_j >= 0
/// for all j (NegativeTrace), or tr(Y) = 0 with all form values strictly
/// positive (ZeroTrace).
struct Certificate {
  MatrixXd matrix;
  CertificateForm form = CertificateForm::NegativeTrace;
  double trace = 0.0;
  VectorXd form_values;
};

/// Exactly one of the two branches holds (Farkas alternative).
struct ScalingOutcome {
  std::variant<Weights, Certificate> result;

  bool scalable() const { return std::holds_alternative<Weights>(result); }
  const Weights& weights() const { return std::get<Weights>(result); }
  const Certificate& certificate() const { return std::get<Certificate>(result); }
};

enum class StrictVerdict { StrictlyScalable, ScalableNotStrictly, NotScalable };

struct StrictScalingOutcome {
  StrictVerdict verdict = StrictVerdict::NotScalable;
  std::optional<Weights> weights;
  double margin = 0.0;                  // LP optimum t* (min_j c_j^2)
  std::vector<int> zero_weight_indices; // 1-based, ScalableNotStrictly only
  std::optional<Certificate> certificate;
};

/// Vectorized linear-feasibility system over Sym(N): column j of A is
/// svec(phi_j phi_j^T), b = svec(I_N). svec uses the N(N+1)/2 upper-triangle
/// coordinates with off-diagonals scaled by sqrt(2), so coordinate dot
/// products equal tr(XY).
std::pair<MatrixXd, VectorXd> build_feasibility_system(const Frame& frame);

VectorXd sym_vectorize(const MatrixXd& s);
MatrixXd sym_devectorize(const VectorXd& v, int n);

ScalingOutcome solve_scaling(const Frame& frame,
                             const Tolerances& tol = default_tolerances());

/// Solves max t s.t. Ax = b, x_j >= t >= 0; strictly scalable iff
/// t* >= strict_floor.
StrictScalingOutcome solve_strict_scaling(const Frame& frame,
                                          const Tolerances& tol = default_tolerances());

/// ||sum_j c_j^2 phi_j phi_j^T - I_N||_F, recomputed from scratch.
double verify_weights(const Frame& frame, const Weights& w);

/// Recomputes trace and form values; true iff the tagged form's invariants
/// hold within cert_slack / cert_margin.
bool verify_certificate(const Frame& frame, const Certificate& cert,
                        const Tolerances& tol = default_tolerances());

/// Shift Y -> Y - (tr(Y)/N) I: exact zero trace, strictly positive form
/// values. Input must verify in NegativeTrace form.
Certificate certificate_to_zero_trace(const Frame& frame, const Certificate& cert,
                                      const Tolerances& tol = default_tolerances());

/// Projected-gradient NNLS with Barzilai-Borwein steps; minimizes
/// ||Ax - b||^2 over x >= 0. Solver-independent test oracle.
std::pair<VectorXd, double> nnls_oracle(const Frame& frame, uint64_t seed = 0,
                                        const Tolerances& tol = default_tolerances());

}  // namespace framescale
