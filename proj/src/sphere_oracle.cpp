#include "spectra/sphere_oracle.hpp"

#include "spectra/errors.hpp"
#include "spectra/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace spectra::sphere_oracle {

namespace {

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

// Running mean / sum of squared deviations for k statistics (Chan et al. merge).
struct Moments {
  std::uint64_t count = 0;
  std::vector<double> mean;
  std::vector<double> m2;

  explicit Moments(std::size_t k) : mean(k, 0.0), m2(k, 0.0) {}

  void add(const std::vector<double>& x) {
    ++count;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double delta = x[j] - mean[j];
      mean[j] += delta / static_cast<double>(count);
      m2[j] += delta * (x[j] - mean[j]);
    }
  }

  void merge(const Moments& o) {
    if (o.count == 0) return;
    const double n1 = static_cast<double>(count);
    const double n2 = static_cast<double>(o.count);
    const double n = n1 + n2;
    for (std::size_t j = 0; j < mean.size(); ++j) {
      const double delta = o.mean[j] - mean[j];
      mean[j] += delta * n2 / n;
      m2[j] += o.m2[j] + delta * delta * n1 * n2 / n;
    }
    count += o.count;
  }

  double std_err(std::size_t j) const {
    if (count < 2) return 0.0;
    const double var = std::max(0.0, m2[j] / static_cast<double>(count - 1));
    return std::sqrt(var / static_cast<double>(count));
  }
};

// stat(xi, out) fills `k` statistics for one sphere point.
template <class Stat>
Moments estimate(int d, std::size_t k, std::uint64_t n, std::uint64_t seed, Stat&& stat) {
  const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<Moments> partial(chunks, Moments(k));
  parallel::parallel_for(chunks, [&](std::size_t c) {
    std::vector<double> x(k);
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(n, begin + kChunk);
    for (std::uint64_t i = begin; i < end; ++i) {
      stat(sphere_point(d, seed, i), x);
      partial[c].add(x);
    }
  });
  Moments total(k);
  for (const auto& p : partial) total.merge(p);
  return total;
}

void check_sym(const Matrix& B) {
  if (B.rows() < 1 || B.rows() != B.cols()) throw DomainError("sphere oracle: B must be square, d >= 1");
  if (!linalg::is_symmetric(B)) throw DomainError("sphere oracle: B is not symmetric");
}

void check_n(std::uint64_t n) {
  if (n < 1) throw DomainError("sphere oracle: need at least one sample");
}

} // namespace

Vector sphere_point(int d, std::uint64_t seed, std::uint64_t index) {
  CounterRng rng(seed, index);
  Vector xi(d);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (int j = 0; j < d; ++j) {
      xi(j) = rng.normal();
      norm2 += xi(j) * xi(j);
    }
  } while (norm2 == 0.0);
  return xi / std::sqrt(norm2);
}

Matrix to_matrix(const theta::SignDiag& J) {
  Vector diag(J.d());
  diag.head(J.s()).setConstant(J.a());
  diag.tail(J.t()).setConstant(-J.b());
  return diag.asDiagonal();
}

McEstimate sphere_abs_quadratic_integral(const Matrix& B, std::uint64_t n, std::uint64_t seed) {
  check_sym(B);
  check_n(n);
  const int d = static_cast<int>(B.rows());
  const Moments m = estimate(d, 1, n, seed, [&](const Vector& xi, std::vector<double>& out) {
    out[0] = std::fabs(xi.dot(B * xi));
  });
  return {m.mean[0], m.std_err(0), n, seed};
}

McEstimate sign_quadratic_moment(const theta::SignDiag& J, int coord, std::uint64_t n, std::uint64_t seed) {
  if (coord < 1 || coord > J.d()) throw DomainError("sign_quadratic_moment: coord out of range");
  check_n(n);
  const Matrix B = to_matrix(J);
  const Vector diag = B.diagonal();
  const int idx = coord - 1;
  const Moments m = estimate(J.d(), 1, n, seed, [&](const Vector& xi, std::vector<double>& out) {
    const double q = (diag.array() * xi.array().square()).sum();
    out[0] = sgn(q) * xi(idx) * xi(idx);
  });
  return {m.mean[0], m.std_err(0), n, seed};
}

MatrixEstimate e_j_matrix(const Matrix& B, std::uint64_t n, std::uint64_t seed) {
  check_sym(B);
  check_n(n);
  const int d = static_cast<int>(B.rows());
  const std::size_t k = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  const Moments m = estimate(d, k, n, seed, [&](const Vector& xi, std::vector<double>& out) {
    const double sg = sgn(xi.dot(B * xi));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out[static_cast<std::size_t>(i * d + j)] = sg * xi(i) * xi(j);
  });
  MatrixEstimate est{Matrix(d, d), Matrix(d, d), n, seed};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const auto idx = static_cast<std::size_t>(i * d + j);
      est.value(i, j) = m.mean[idx];
      est.std_err(i, j) = m.std_err(idx);
    }
  return est;
}

MatrixEstimate e_j_matrix(const theta::SignDiag& J, std::uint64_t n, std::uint64_t seed) {
  return e_j_matrix(to_matrix(J), n, seed);
}

} // namespace spectra::sphere_oracle
