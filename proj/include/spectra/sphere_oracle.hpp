#pragma once

// Monte-Carlo estimates of integrals over the unit sphere S^{d-1} under the
// uniform probability measure. Points are normalized standard Gaussian
// vectors; sample i is drawn from the counter stream (seed, i).

#include "spectra/linalg.hpp"
#include "spectra/theta.hpp"

#include <cstdint>

namespace spectra::sphere_oracle {

inline constexpr std::uint64_t kDefaultSamples = 1'000'000;
/// Samples per reduction chunk; fixed so results do not depend on threading.
inline constexpr std::uint64_t kChunk = 4096;

struct McEstimate {
  double value = 0.0;
  double std_err = 0.0; // sample standard deviation / sqrt(n)
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

struct MatrixEstimate {
  Matrix value;
  Matrix std_err;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// J(s,t;a,b) as a dense diagonal matrix.
Matrix to_matrix(const theta::SignDiag& J);

/// Estimate of the sphere average of |xi* B xi|.
McEstimate sphere_abs_quadratic_integral(const Matrix& B, std::uint64_t n, std::uint64_t seed);

/// Estimate of the sphere average of sgn(xi* J xi) xi_coord^2; coord is 1-based.
McEstimate sign_quadratic_moment(const theta::SignDiag& J, int coord, std::uint64_t n, std::uint64_t seed);

/// Estimate of E_B, the sphere average of sgn(xi* B xi) xi xi*.
MatrixEstimate e_j_matrix(const Matrix& B, std::uint64_t n, std::uint64_t seed);
MatrixEstimate e_j_matrix(const theta::SignDiag& J, std::uint64_t n, std::uint64_t seed);

/// Draws sample `index` of stream `seed` as a unit vector in R^d.
Vector sphere_point(int d, std::uint64_t seed, std::uint64_t index);

} // namespace spectra::sphere_oracle
