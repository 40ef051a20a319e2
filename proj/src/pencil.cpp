#include "spectra/pencil.hpp"

#include "spectra/errors.hpp"
#include "spectra/parallel.hpp"
#include "spectra/sphere_oracle.hpp"
#include "spectra/theta.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace spectra::pencil {

SymTuple::SymTuple(std::vector<Matrix> mats) : mats_(std::move(mats)) {
  if (mats_.empty()) throw DomainError("SymTuple needs at least one matrix");
  n_ = static_cast<int>(mats_.front().rows());
  for (std::size_t j = 0; j < mats_.size(); ++j) {
    const Matrix& m = mats_[j];
    if (m.rows() != n_ || m.cols() != n_)
      throw DomainError("SymTuple: matrix " + std::to_string(j) + " has a different size");
    if (!linalg::is_symmetric(m))
      throw DomainError("SymTuple: matrix " + std::to_string(j) + " is not symmetric");
  }
}

SymTuple SymTuple::scaled(double c) const {
  std::vector<Matrix> out;
  out.reserve(mats_.size());
  for (const auto& m : mats_) out.push_back(c * m);
  return SymTuple(std::move(out));
}

SymTuple SymTuple::zeros(int g, int n) {
  if (g < 1 || n < 1) throw DomainError("SymTuple::zeros needs g, n >= 1");
  return SymTuple(std::vector<Matrix>(static_cast<std::size_t>(g), Matrix::Zero(n, n)));
}

Matrix tensor_sum(const SymTuple& A, const SymTuple& X) {
  if (A.g() != X.g())
    throw DomainError("pencil arity " + std::to_string(A.g()) + " does not match tuple arity " +
                      std::to_string(X.g()));
  Matrix out = Matrix::Zero(A.n() * X.n(), A.n() * X.n());
  for (int j = 0; j < A.g(); ++j) out += linalg::kron(A[j], X[j]);
  return out;
}

Matrix evaluate(const MonicPencil& L, const SymTuple& X) {
  Matrix m = -tensor_sum(L.coeffs(), X);
  m.diagonal().array() += 1.0;
  return m;
}

Matrix evaluate(const MonicPencil& L, std::span<const double> x) {
  if (static_cast<int>(x.size()) != L.g()) throw DomainError("pencil arity does not match point dimension");
  Matrix m = Matrix::Identity(L.nu(), L.nu());
  for (int j = 0; j < L.g(); ++j) m -= x[static_cast<std::size_t>(j)] * L[j];
  return m;
}

double membership_margin(const MonicPencil& L, const SymTuple& X) {
  return linalg::lambda_min(evaluate(L, X));
}

bool in_free_spectrahedron(const MonicPencil& L, const SymTuple& X, double tol) {
  if (!(tol >= 0.0)) throw DomainError("membership tolerance must be nonnegative");
  return membership_margin(L, X) >= -tol;
}

MonicPencil cube_pencil(int g) {
  if (g < 1) throw DomainError("cube_pencil requires g >= 1");
  std::vector<Matrix> coeffs;
  coeffs.reserve(static_cast<std::size_t>(g));
  for (int j = 0; j < g; ++j) {
    Matrix c = Matrix::Zero(2 * g, 2 * g);
    c(j, j) = 1.0;
    c(g + j, g + j) = -1.0;
    coeffs.push_back(std::move(c));
  }
  return MonicPencil(SymTuple(std::move(coeffs)));
}

double cube_vertex_margin(const MonicPencil& L) {
  const int g = L.g();
  if (g > kMaxVertexEnumeration)
    throw DomainError("cube inclusion check refuses g > " + std::to_string(kMaxVertexEnumeration));
  double worst = std::numeric_limits<double>::infinity();
  std::vector<double> v(static_cast<std::size_t>(g));
  const std::uint64_t count = std::uint64_t{1} << g;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    for (int j = 0; j < g; ++j) v[static_cast<std::size_t>(j)] = ((mask >> j) & 1U) ? -1.0 : 1.0;
    worst = std::min(worst, linalg::lambda_min(evaluate(L, v)));
  }
  return worst;
}

Matrix haar_orthogonal(int d, CounterRng& rng) {
  if (d < 1) throw DomainError("haar_orthogonal requires d >= 1");
  Matrix gauss(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) gauss(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(gauss);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < d; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

Matrix haar_orthogonal(int d, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  return haar_orthogonal(d, rng);
}

Matrix random_contraction(int n, CounterRng& rng) {
  const Matrix q = haar_orthogonal(n, rng);
  Vector diag(n);
  for (int i = 0; i < n; ++i) diag(i) = rng.uniform(-1.0, 1.0);
  Matrix m = q.transpose() * diag.asDiagonal() * q;
  return 0.5 * (m + m.transpose());
}

SymTuple random_contraction_tuple(int g, int n, CounterRng& rng) {
  std::vector<Matrix> mats;
  mats.reserve(static_cast<std::size_t>(g));
  for (int j = 0; j < g; ++j) mats.push_back(random_contraction(n, rng));
  return SymTuple(std::move(mats));
}

CubeRelaxationReport cube_relaxation_test(const MonicPencil& B, int trials, std::uint64_t seed, int n,
                                          double tol) {
  if (trials < 1) throw DomainError("cube_relaxation_test needs trials >= 1");
  if (n < 0) throw DomainError("cube_relaxation_test needs n >= 0");
  if (cube_vertex_margin(B) < -tol)
    throw DomainError("cube_relaxation_test: [-1,1]^g is not contained in the spectrahedron of B");

  CubeRelaxationReport report;
  report.nu = B.nu();
  report.g = B.g();
  report.n = n == 0 ? B.nu() : n;
  report.trials = trials;
  report.theta_nu = theta::theta(B.nu()).theta;

  std::vector<double> margins(static_cast<std::size_t>(trials));
  std::vector<double> scales(static_cast<std::size_t>(trials));
  parallel::parallel_for(static_cast<std::size_t>(trials), [&](std::size_t k) {
    CounterRng rng(seed, k);
    const SymTuple X = random_contraction_tuple(B.g(), report.n, rng);
    const Vector eig = linalg::sym_eigenvalues(tensor_sum(B.coeffs(), X));
    scales[k] = eig(eig.size() - 1);
    margins[k] = 1.0 - scales[k] / report.theta_nu;
  });
  report.worst_margin = *std::min_element(margins.begin(), margins.end());
  report.required_scale = *std::max_element(scales.begin(), scales.end());
  report.tightest_scaling = report.required_scale > 0.0 ? 1.0 / report.required_scale
                                                         : std::numeric_limits<double>::infinity();
  report.violations = static_cast<int>(
      std::count_if(margins.begin(), margins.end(), [tol](double m) { return m < -tol; }));
  return report;
}

SharpnessWitness sharpness_witness(int d, int cells, int samples_per_cell, std::uint64_t seed) {
  if (d < 2) throw DomainError("sharpness_witness requires d >= 2");
  if (cells < 1 || samples_per_cell < 1) throw DomainError("sharpness_witness needs cells, samples >= 1");

  const theta::ThetaReport rep = theta::theta(d);
  const int s = rep.minimizer_s;
  const int t = rep.minimizer_t;
  const theta::KappaStar opt = theta::kappa_star(s, t);
  const Matrix j_opt = sphere_oracle::to_matrix(theta::SignDiag(s, t, opt.a_opt, opt.b_opt));
  const Matrix j_unit = sphere_oracle::to_matrix(theta::SignDiag(s, t, 1.0, 1.0));

  const auto ncells = static_cast<std::size_t>(cells);
  std::vector<Matrix> centers;
  centers.reserve(ncells);
  for (std::size_t c = 0; c < ncells; ++c) {
    CounterRng rng(seed, c);
    centers.push_back(haar_orthogonal(d, rng));
  }

  // Voronoi assignment of Haar samples to the nearest center (Frobenius).
  const std::uint64_t sample_seed = splitmix64(seed ^ 0xA5A5A5A5A5A5A5A5ULL);
  const std::uint64_t total = static_cast<std::uint64_t>(cells) * static_cast<std::uint64_t>(samples_per_cell);
  constexpr std::uint64_t kBlock = 1 << 14;
  const std::uint64_t blocks = (total + kBlock - 1) / kBlock;
  std::vector<std::vector<Matrix>> block_sums(blocks);
  std::vector<std::vector<std::uint64_t>> block_counts(blocks);
  parallel::parallel_for(blocks, [&](std::size_t b) {
    auto& sums = block_sums[b];
    auto& counts = block_counts[b];
    sums.assign(ncells, Matrix::Zero(d, d));
    counts.assign(ncells, 0);
    const std::uint64_t begin = b * kBlock;
    const std::uint64_t end = std::min(total, begin + kBlock);
    for (std::uint64_t i = begin; i < end; ++i) {
      CounterRng rng(sample_seed, i);
      const Matrix u = haar_orthogonal(d, rng);
      std::size_t nearest = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < ncells; ++c) {
        const double dist = (u - centers[c]).squaredNorm();
        if (dist < best) {
          best = dist;
          nearest = c;
        }
      }
      sums[nearest].noalias() += u.transpose() * j_opt * u;
      ++counts[nearest];
    }
  });

  SharpnessWitness w;
  w.theta = rep.theta;
  w.cell_counts.assign(ncells, 0);
  std::vector<Matrix> a_mats(ncells, Matrix::Zero(d, d));
  for (std::size_t b = 0; b < blocks; ++b)
    for (std::size_t c = 0; c < ncells; ++c) {
      a_mats[c] += block_sums[b][c];
      w.cell_counts[c] += block_counts[b][c];
    }
  const double norm = 1.0 / (static_cast<double>(total) * rep.kappa_star);
  std::vector<Matrix> x_mats;
  x_mats.reserve(ncells);
  for (std::size_t c = 0; c < ncells; ++c) {
    a_mats[c] *= norm;
    a_mats[c] = 0.5 * (a_mats[c] + a_mats[c].transpose()).eval();
    Matrix x = centers[c].transpose() * j_unit * centers[c];
    x_mats.push_back(0.5 * (x + x.transpose()));
  }
  w.A = SymTuple(std::move(a_mats));
  w.X = SymTuple(std::move(x_mats));

  const Matrix m = tensor_sum(w.A, w.X);
  w.lambda_max = linalg::lambda_max(m);
  Vector e = Vector::Zero(d * d);
  for (int j = 0; j < d; ++j) e(j * d + j) = 1.0 / std::sqrt(static_cast<double>(d));
  w.e_functional = e.dot(m * e);
  return w;
}

} // namespace spectra::pencil
