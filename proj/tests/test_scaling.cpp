#include "framescale/scaling.hpp"

#include "framescale/linalg.hpp"
#include "framescale/rng.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace framescale;
using framescale::testing::make_frame;
using framescale::testing::mercedes_benz;
using framescale::testing::nonorthogonal_basis_2d;

TEST_CASE("feasibility system vectorization") {
  SUBCASE("orthonormal basis gives diagonal unit columns") {
    const auto [a, b] = build_feasibility_system(make_frame({{1, 0}, {0, 1}}));
    MatrixXd expected(3, 2);
    expected << 1, 0, 0, 0, 0, 1;  // coords (x11, sqrt2 x12, x22)
    CHECK(a.isApprox(expected));
    CHECK(b.isApprox(Eigen::Vector3d(1, 0, 1)));
  }
  SUBCASE("rank-1 column with sqrt2 off-diagonal") {
    VectorXd phi(2);
    phi << 1, 1;
    const VectorXd col = sym_vectorize(phi * phi.transpose());
    CHECK(col.isApprox(Eigen::Vector3d(1, std::sqrt(2.0), 1)));
  }
  SUBCASE("Mercedes-Benz tight solution solves the system") {
    const auto [a, b] = build_feasibility_system(mercedes_benz());
    const VectorXd x = VectorXd::Constant(3, 2.0 / 3.0);
    CHECK((a * x - b).norm() <= 1e-12);
  }
  SUBCASE("svec dot product equals the trace inner product") {
    SplitMix64 rng(3);
    for (int t = 0; t < 20; ++t) {
      MatrixXd p(3, 3), q(3, 3);
      for (int i = 0; i < 9; ++i) {
        p(i / 3, i % 3) = rng.next_gaussian();
        q(i / 3, i % 3) = rng.next_gaussian();
      }
      const MatrixXd ps = 0.5 * (p + p.transpose());
      const MatrixXd qs = 0.5 * (q + q.transpose());
      CHECK(sym_vectorize(ps).dot(sym_vectorize(qs)) ==
            doctest::Approx((ps * qs).trace()).epsilon(1e-12));
      CHECK(sym_devectorize(sym_vectorize(ps), 3).isApprox(ps, 1e-14));
    }
  }
}

TEST_CASE("solve_scaling golden cases") {
  SUBCASE("orthonormal basis") {
    const ScalingOutcome out = solve_scaling(make_frame({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    REQUIRE(out.scalable());
    CHECK(out.weights().values.isApprox(VectorXd::Ones(3)));
    CHECK(out.weights().parseval_residual <= 1e-12);
  }
  SUBCASE("non-orthogonal basis yields a certificate") {
    const ScalingOutcome out = solve_scaling(nonorthogonal_basis_2d());
    REQUIRE_FALSE(out.scalable());
    CHECK(verify_certificate(nonorthogonal_basis_2d(), out.certificate()));
    // the displayed witness verifies too
    MatrixXd y(2, 2);
    y << 0, 1, 1, -1;
    Certificate hand{y, CertificateForm::NegativeTrace, y.trace(), VectorXd()};
    CHECK(verify_certificate(nonorthogonal_basis_2d(), hand));
  }
  SUBCASE("Mercedes-Benz weights sqrt(2/3)") {
    const ScalingOutcome out = solve_scaling(mercedes_benz());
    REQUIRE(out.scalable());
    for (int j = 0; j < 3; ++j)
      CHECK(out.weights().values(j) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-9));
    CHECK(out.weights().parseval_residual <= 1e-10);
  }
}

TEST_CASE("solve_strict_scaling") {
  SUBCASE("scalable but not strictly") {
    const double r = 1.0 / std::sqrt(2.0);
    const Frame f = make_frame({{1, 0}, {0, 1}, {r, r}});
    const StrictScalingOutcome out = solve_strict_scaling(f);
    CHECK(out.verdict == StrictVerdict::ScalableNotStrictly);
    CHECK(out.margin <= 1e-10);
    REQUIRE(out.weights.has_value());
    CHECK(verify_weights(f, *out.weights) <= 1e-9);
    // the off-diagonal equation forces c3 = 0
    REQUIRE(out.zero_weight_indices.size() == 1);
    CHECK(out.zero_weight_indices[0] == 3);
  }
  SUBCASE("Mercedes-Benz margin 2/3") {
    const StrictScalingOutcome out = solve_strict_scaling(mercedes_benz());
    CHECK(out.verdict == StrictVerdict::StrictlyScalable);
    CHECK(out.margin == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  }
  SUBCASE("repeated vector splits the weight") {
    const Frame f = make_frame({{1, 0}, {0, 1}, {0, 1}});
    const StrictScalingOutcome out = solve_strict_scaling(f);
    CHECK(out.verdict == StrictVerdict::StrictlyScalable);
    REQUIRE(out.weights.has_value());
    CHECK(verify_weights(f, *out.weights) <= 1e-9);
    CHECK(out.weights->values.minCoeff() * out.weights->values.minCoeff() >=
          out.margin - 1e-12);
  }
}

TEST_CASE("verify_weights residuals") {
  Weights ones{VectorXd::Ones(2), 0.0};
  CHECK(verify_weights(make_frame({{1, 0}, {0, 1}}), ones) == doctest::Approx(0.0));

  Weights good{VectorXd::Constant(3, std::sqrt(2.0 / 3.0)), 0.0};
  CHECK(verify_weights(mercedes_benz(), good) <= 1e-12);

  Weights bad{VectorXd::Ones(3), 0.0};
  CHECK(verify_weights(mercedes_benz(), bad) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("verify_certificate rejects bogus witnesses") {
  // -I has strictly negative form values on any nonzero vector
  Certificate neg_id{-MatrixXd::Identity(2, 2), CertificateForm::NegativeTrace,
                     -2.0, VectorXd()};
  CHECK_FALSE(verify_certificate(mercedes_benz(), neg_id));
  CHECK_FALSE(verify_certificate(nonorthogonal_basis_2d(), neg_id));

  // a scalable frame admits no certificate at all: random scan
  SplitMix64 rng(23);
  for (int t = 0; t < 200; ++t) {
    MatrixXd y(2, 2);
    y << rng.next_gaussian(), rng.next_gaussian(), 0, rng.next_gaussian();
    const SymMatrix sym(y);
    if (sym.entries().trace() >= 0) continue;
    Certificate cand{sym.entries(), CertificateForm::NegativeTrace,
                     sym.entries().trace(), VectorXd()};
    CHECK_FALSE(verify_certificate(mercedes_benz(), cand));
  }
}

TEST_CASE("certificate_to_zero_trace") {
  SUBCASE("hand case") {
    MatrixXd y(2, 2);
    y << 0, 1, 1, -1;
    Certificate cert{y, CertificateForm::NegativeTrace, -1.0, VectorXd()};
    const Certificate shifted =
        certificate_to_zero_trace(nonorthogonal_basis_2d(), cert);
    MatrixXd expected(2, 2);
    expected << 0.5, 1, 1, -0.5;
    CHECK(shifted.matrix.isApprox(expected, 1e-12));
    CHECK(shifted.matrix.trace() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(shifted.form_values(0) == doctest::Approx(0.5).epsilon(1e-12));
    // 1 (original form value) + (alpha/N) * ||(1,1)||^2 = 1 + 1
    CHECK(shifted.form_values(1) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("rejects non-verifying input") {
    Certificate junk{-MatrixXd::Identity(2, 2), CertificateForm::NegativeTrace,
                     -2.0, VectorXd()};
    CHECK_THROWS_AS(certificate_to_zero_trace(mercedes_benz(), junk), InputError);
  }
}

TEST_CASE("nnls oracle") {
  {
    const auto [x, obj] = nnls_oracle(make_frame({{1, 0}, {0, 1}}));
    CHECK(obj <= 1e-12);
    CHECK(x.isApprox(VectorXd::Ones(2), 1e-5));
  }
  {
    const auto [x, obj] = nnls_oracle(nonorthogonal_basis_2d());
    CHECK(obj >= 0.1);
  }
  {
    const auto [x, obj] = nnls_oracle(mercedes_benz());
    CHECK(obj <= 1e-10);
    CHECK(x.isApprox(VectorXd::Constant(3, 2.0 / 3.0), 1e-4));
  }
}

TEST_CASE("Farkas exclusivity and oracle agreement on a random ensemble") {
  SplitMix64 rng(31);
  int ambiguous = 0;
  const int trials = 200;  // the acceptance suite runs the full 1000
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 3);
    const int m = n + static_cast<int>(rng.next_u64() % (n + 3));
    const Frame f = random_frame(rng, n, m);
    const ScalingOutcome out = solve_scaling(f);
    if (out.scalable()) {
      CHECK(verify_weights(f, out.weights()) <= 1e-9);
    } else {
      CHECK(verify_certificate(f, out.certificate()));
    }
    const auto [x, obj] = nnls_oracle(f, /*seed=*/t);
    if (obj > 1e-10 && obj < 1e-6) {
      ++ambiguous;
      continue;
    }
    CHECK(out.scalable() == (obj <= 1e-8));
  }
  CHECK(ambiguous <= trials / 50);
}

TEST_CASE("verdict invariance under unitaries and global scaling") {
  SplitMix64 rng(37);
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 2);
    const int m = n + static_cast<int>(rng.next_u64() % 3);
    const Frame f = random_frame(rng, n, m);
    const bool verdict = solve_scaling(f).scalable();

    const MatrixXd u = rng.orthogonal_matrix(n);
    CHECK(solve_scaling(apply_unitary(f, u)).scalable() == verdict);

    const double lambda = 0.5 + 2.0 * rng.next_double();
    const Frame scaled(lambda * f.rows());
    CHECK(solve_scaling(scaled).scalable() == verdict);
  }
}

TEST_CASE("solve_scaling requires a frame") {
  CHECK_THROWS_AS(solve_scaling(make_frame({{1, 0}, {2, 0}})), InputError);
}
