#pragma once

// Dense real linear-algebra helpers on top of Eigen. Every spectral routine
// here goes through the self-adjoint eigensolver.

#include "spectra/rng.hpp"

#include <Eigen/Dense>

namespace spectra {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kSymmetryTol = 1e-12;

namespace linalg {

/// max |M - M^T| entry; M must be square.
double asymmetry(const Matrix& m);
bool is_symmetric(const Matrix& m, double tol = kSymmetryTol);

Matrix kron(const Matrix& a, const Matrix& b);

/// Ascending eigenvalues of a symmetric matrix.
Vector sym_eigenvalues(const Matrix& m);
double lambda_min(const Matrix& m);
double lambda_max(const Matrix& m);
/// Operator norm of a symmetric matrix.
double sym_norm(const Matrix& m);
/// Operator norm of an arbitrary matrix, via the eigenvalues of M^T M.
double op_norm(const Matrix& m);

/// f(M) for symmetric M by eigendecomposition.
template <class F>
Matrix sym_apply(const Matrix& m, F&& f);

/// Random symmetric matrix with i.i.d. N(0,1) upper-triangle entries.
Matrix random_symmetric(int n, CounterRng& rng);

} // namespace linalg
} // namespace spectra

#include <Eigen/Eigenvalues>

template <class F>
spectra::Matrix spectra::linalg::sym_apply(const Matrix& m, F&& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  Vector vals = es.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) vals(i) = f(vals(i));
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().transpose();
}
