#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace framescale {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Bad user input (malformed file, zero vector, dimension mismatch).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical breakdown (non-convergence, ill-conditioned basis). Never a
/// silent wrong verdict.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Central tolerance record; single source of truth for all modules.
struct Tolerances {
  double zero_tol = 1e-12;        // vector-norm floor
  double eig_tol = 1e-12;         // Jacobi off-diagonal target, relative
  double parseval_tol = 1e-9;     // ||sum c^2 phi phi^T - I||_F bound
  double rank_tol = 1e-10;        // relative to upper frame bound B
  double orth_tol = 1e-9;         // ||U^T U - I||_F bound for unitaries
  double gram_tol = 1e-10;        // relative inner-product zero test
  double nplus1_tol = 1e-10;      // candidate-constant agreement
  double feas_tol = 1e-10;        // phase-1 infeasibility threshold, relative to ||b||
  double strict_floor = 1e-10;    // minimal LP margin for strict scalability
  double cert_margin = 1e-8;      // |trace| floor after ||Y||_F = 1 normalization
  double cert_slack = 1e-10;      // allowed negativity of certificate form values
  double oracle_tol = 1e-8;       // NNLS objective threshold (test oracle)
  double coeff_floor = 1e-10;     // minimal |a_k| in quadric cones
  double surface_band = 1e-10;    // Surface classification band, relative to ||x||^2
  double extension_tol = 1e-9;    // coupling-Gram off-diagonal bound
  int max_jacobi_sweeps = 64;

  static Tolerances strict_profile() {
    Tolerances t;
    t.parseval_tol = 1e-11;
    t.extension_tol = 1e-11;
    t.cert_margin = 1e-7;
    return t;
  }
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

/// Ordered list of M nonzero vectors in R^N, stored as the rows of an
/// M x N matrix (the analysis matrix).
class Frame {
 public:
  /// Rows are the frame vectors. Throws InputError on a zero row.
  /// A zero-column matrix (dim-0 companion frames) is allowed.
  explicit Frame(MatrixXd vectors_as_rows,
                 const Tolerances& tol = default_tolerances())
      : rows_(std::move(vectors_as_rows)) {
    if (rows_.rows() == 0) throw InputError("frame is empty");
    if (rows_.cols() > 0) {
      for (Eigen::Index j = 0; j < rows_.rows(); ++j) {
        if (rows_.row(j).norm() <= tol.zero_tol)
          throw InputError("zero vector at row " + std::to_string(j + 1));
      }
    }
  }

  static Frame from_vectors(const std::vector<VectorXd>& vecs,
                            const Tolerances& tol = default_tolerances()) {
    if (vecs.empty()) throw InputError("frame is empty");
    MatrixXd m(static_cast<Eigen::Index>(vecs.size()), vecs.front().size());
    for (size_t j = 0; j < vecs.size(); ++j) {
      if (vecs[j].size() != m.cols())
        throw InputError("inconsistent vector dimension at row " +
                         std::to_string(j + 1));
      m.row(static_cast<Eigen::Index>(j)) = vecs[j].transpose();
    }
    return Frame(std::move(m), tol);
  }

  int dim() const { return static_cast<int>(rows_.cols()); }
  int size() const { return static_cast<int>(rows_.rows()); }
  VectorXd vector(int j) const { return rows_.row(j).transpose(); }
  const MatrixXd& rows() const { return rows_; }

 private:
  MatrixXd rows_;
};

/// Symmetric N x N matrix; the constructor symmetrizes, so
/// entries(i,j) == entries(j,i) exactly afterwards.
class SymMatrix {
 public:
  explicit SymMatrix(const MatrixXd& m) {
    if (m.rows() != m.cols()) throw InputError("SymMatrix: matrix not square");
    entries_ = 0.5 * (m + m.transpose());
  }

  int dim() const { return static_cast<int>(entries_.rows()); }
  const MatrixXd& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }
  double trace() const { return entries_.trace(); }

 private:
  MatrixXd entries_;
};

/// Eigendecomposition S = U diag(lambda) U^T, eigenvalues ascending.
struct SpectralDecomposition {
  VectorXd eigenvalues;
  MatrixXd eigenvectors;  // orthogonal, columns match eigenvalues
};

}  // namespace framescale
