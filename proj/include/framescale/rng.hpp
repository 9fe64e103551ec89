#pragma once

#include "framescale/types.hpp"

#include <cstdint>

namespace framescale {

/// Seeded splitmix64 generator; the single PRNG behind every randomized
/// code path, so ensembles reproduce across runs and platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller.
  double next_gaussian();

  VectorXd gaussian_vector(int n);

  /// Uniform on the unit sphere of R^n.
  VectorXd sphere_vector(int n);

  /// Uniform in the closed ball of the given radius.
  VectorXd ball_vector(int n, double radius);

  /// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with
  /// sign-fixed diagonal).
  MatrixXd orthogonal_matrix(int n);

 private:
  uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Random frame with M vectors in R^N; dist "sphere" draws unit vectors,
/// "gauss" draws standard normal entries. Resamples until is_frame holds.
Frame random_frame(SplitMix64& rng, int dim, int count, bool gauss = false);

}  // namespace framescale
