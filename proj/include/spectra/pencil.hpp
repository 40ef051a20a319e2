#pragma once

// Monic linear pencils L_A(X) = I - sum_j A_j (x) X_j, free-spectrahedron
// membership, the matrix-cube pencil, a randomized check of the cube
// relaxation bound, and the construction showing that bound is sharp.

#include "spectra/linalg.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace spectra::pencil {

inline constexpr double kMembershipTol = 1e-9;
inline constexpr int kMaxVertexEnumeration = 20;

/// g symmetric n x n matrices of a common size.
class SymTuple {
public:
  SymTuple() = default;
  /// Throws DomainError on empty input, size mismatch or asymmetry above 1e-12.
  explicit SymTuple(std::vector<Matrix> mats);

  int g() const noexcept { return static_cast<int>(mats_.size()); }
  int n() const noexcept { return n_; }
  const Matrix& operator[](int j) const { return mats_[static_cast<std::size_t>(j)]; }
  const std::vector<Matrix>& mats() const noexcept { return mats_; }

  /// Every matrix multiplied by c.
  SymTuple scaled(double c) const;
  /// Tuple of zero matrices.
  static SymTuple zeros(int g, int n);

private:
  std::vector<Matrix> mats_;
  int n_ = 0;
};

/// Coefficients A_1..A_g (each nu x nu) of L_A(x) = I - sum A_j x_j.
class MonicPencil {
public:
  explicit MonicPencil(SymTuple coeffs) : coeffs_(std::move(coeffs)) {}

  int nu() const noexcept { return coeffs_.n(); }
  int g() const noexcept { return coeffs_.g(); }
  const Matrix& operator[](int j) const { return coeffs_[j]; }
  const SymTuple& coeffs() const noexcept { return coeffs_; }

private:
  SymTuple coeffs_;
};

/// sum_j A_j (x) X_j, size (nu n) x (nu n).
Matrix tensor_sum(const SymTuple& A, const SymTuple& X);

/// L_A(X) = I - sum_j A_j (x) X_j.
Matrix evaluate(const MonicPencil& L, const SymTuple& X);

/// L_A(x) at a scalar point.
Matrix evaluate(const MonicPencil& L, std::span<const double> x);

/// lambda_min(L_A(X)).
double membership_margin(const MonicPencil& L, const SymTuple& X);

bool in_free_spectrahedron(const MonicPencil& L, const SymTuple& X, double tol = kMembershipTol);

/// Pencil whose spectrahedron is [-1,1]^g: C_j = diag(1,-1) (x) E_j.
MonicPencil cube_pencil(int g);

/// Smallest lambda_min(L(v)) over the 2^g vertices v of [-1,1]^g.
/// Refuses (DomainError) for g > 20.
double cube_vertex_margin(const MonicPencil& L);

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix, sign-fixed).
Matrix haar_orthogonal(int d, std::uint64_t seed);
Matrix haar_orthogonal(int d, CounterRng& rng);

/// Q^T D Q with Q Haar and D uniform diagonal in [-1,1].
Matrix random_contraction(int n, CounterRng& rng);
SymTuple random_contraction_tuple(int g, int n, CounterRng& rng);

struct CubeRelaxationReport {
  int nu = 0;
  int g = 0;
  int n = 0;
  int trials = 0;
  double theta_nu = 0.0;
  /// Smallest lambda_min(L_B(X / theta(nu))) seen.
  double worst_margin = 0.0;
  /// Largest lambda_max(sum B_j (x) X_j) seen; the bound says it is <= theta(nu).
  double required_scale = 0.0;
  /// 1 / required_scale: the largest s with s X in D_{L_B} for every trial.
  double tightest_scaling = 0.0;
  int violations = 0;
  bool passed() const noexcept { return violations == 0; }
};

/// Checks (1/theta(nu)) X in D_{L_B} for `trials` random contraction tuples of
/// size n (n = 0 means n = nu). B must contain the cube: verified by vertex
/// enumeration, DomainError otherwise.
CubeRelaxationReport cube_relaxation_test(const MonicPencil& B, int trials, std::uint64_t seed, int n = 0,
                                          double tol = kMembershipTol);

struct SharpnessWitness {
  SymTuple A;            // coefficient tuple, d x d matrices, one per cell
  SymTuple X;            // U_c^T J(s,t;1,1) U_c at the cell centers
  double lambda_max = 0.0; // lambda_max(sum A_j (x) X_j)
  double e_functional = 0.0; // e^T (sum A_j (x) X_j) e, e = d^{-1/2} sum e_j (x) e_j
  double theta = 0.0;
  std::vector<std::uint64_t> cell_counts;
};

/// Discretizes the averaged pencil over O(d): the group is partitioned into
/// Voronoi cells of `cells` Haar centers, A_j is the integral of
/// U^T J_opt U / kappa_*(d) over cell j (estimated with cells*samples_per_cell
/// Haar samples) and X_j = U_j^T J(s,t;1,1) U_j at the centers.
SharpnessWitness sharpness_witness(int d, int cells, int samples_per_cell, std::uint64_t seed);

} // namespace spectra::pencil
