#include "spectra/linalg.hpp"

#include "spectra/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace spectra::linalg {

double asymmetry(const Matrix& m) {
  if (m.rows() != m.cols()) throw DomainError("asymmetry: matrix is not square");
  if (m.size() == 0) return 0.0;
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

bool is_symmetric(const Matrix& m, double tol) {
  return m.rows() == m.cols() && asymmetry(m) <= tol;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector sym_eigenvalues(const Matrix& m) {
  if (m.rows() != m.cols()) throw DomainError("sym_eigenvalues: matrix is not square");
  if (m.size() == 0) return Vector();
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("symmetric eigensolver failed");
  return es.eigenvalues();
}

double lambda_min(const Matrix& m) { return sym_eigenvalues(m)(0); }

double lambda_max(const Matrix& m) {
  const Vector v = sym_eigenvalues(m);
  return v(v.size() - 1);
}

double sym_norm(const Matrix& m) {
  const Vector v = sym_eigenvalues(m);
  return std::max(std::fabs(v(0)), std::fabs(v(v.size() - 1)));
}

double op_norm(const Matrix& m) {
  const Matrix gram = m.rows() <= m.cols() ? Matrix(m * m.transpose()) : Matrix(m.transpose() * m);
  return std::sqrt(std::max(0.0, lambda_max(gram)));
}

Matrix random_symmetric(int n, CounterRng& rng) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = rng.normal();
  return m;
}

} // namespace spectra::linalg
