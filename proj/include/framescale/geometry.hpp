#pragma once

#include "framescale/scaling.hpp"
#include "framescale/types.hpp"

#include <vector>

namespace framescale {

/// Conical zero-trace quadric: surface
///   sum_{k<N} a_k <x,e_k>^2 = <x,e_N>^2
/// for an orthonormal basis {e_k} (columns) and nonzero coefficients with
/// sum a_k = 1.
struct QuadricCone {
  MatrixXd basis;     // N x N orthogonal
  VectorXd coeffs;    // N-1 entries, all nonzero, summing to 1

  int dim() const { return static_cast<int>(basis.rows()); }
};

enum class ConeRegion { Interior, Surface, Exterior };

/// Validates the QuadricCone invariants; throws InputError on violation.
QuadricCone make_cone(MatrixXd basis, VectorXd coeffs,
                      const Tolerances& tol = default_tolerances());

/// Cone whose interior is {x : x^T Y x > 0} for a zero-trace certificate Y.
/// Zero eigenvalues are perturbed trace-preservingly (budget below half the
/// minimal form value, so no frame vector changes region). Throws on an
/// all-degenerate spectrum.
QuadricCone cone_from_certificate(const Certificate& cert,
                                  const Tolerances& tol = default_tolerances());

/// Sign of g(x) = <x,e_N>^2 - sum a_k <x,e_k>^2 within the surface band.
ConeRegion classify(const QuadricCone& cone, const VectorXd& x,
                    const Tolerances& tol = default_tolerances());

/// True iff every frame vector lies in the interior; a true result
/// witnesses non-scalability.
bool verify_geometric_characterization(const Frame& frame, const QuadricCone& cone,
                                       const Tolerances& tol = default_tolerances());

/// The C_2 element with a_1 = 1 and basis rotated by `angle`; at angle 0
/// its surface is the pair of lines at +-45 degrees.
QuadricCone quadrant_cone_2d(double angle);

/// Cone transported by an orthogonal matrix: classify(rotate(cone,U), Ux)
/// equals classify(cone, x).
QuadricCone rotate(const QuadricCone& cone, const MatrixXd& u,
                   const Tolerances& tol = default_tolerances());

/// Surface point samples for N in {2,3}; every point satisfies the quadric
/// equation to relative 1e-9. Throws on N > 3.
std::vector<VectorXd> sample_surface(const QuadricCone& cone, int resolution);

}  // namespace framescale
