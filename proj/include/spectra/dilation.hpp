#pragma once

// Explicit dilations of symmetric matrix tuples and the matrix balls they
// relate: CAR spin systems, the block-diagonal g-scaled dilation, the
// two-variable spin-ball dilation built from a Halmos unitary, the Choi matrix
// of the OH-to-spin map, and the g = 2 spin-ball extreme-point test.

#include "spectra/linalg.hpp"
#include "spectra/pencil.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace spectra::dilation {

using pencil::SymTuple;

inline constexpr int kMaxSpinG = 14;
inline constexpr int kMaxSpinTensorG = 8;
inline constexpr int kMaxChoiG = 8;
inline constexpr double kDefectClamp = 1e-12;
inline constexpr double kSpinBallTol = 1e-10;

/// A symmetric signed permutation matrix: row i has a single entry sign[i]
/// in column perm[i]. Exact integer representation of a CAR generator.
struct SignedPermutation {
  std::vector<std::uint32_t> perm;
  std::vector<std::int8_t> sign;

  std::size_t size() const noexcept { return perm.size(); }
  SignedPermutation operator*(const SignedPermutation& rhs) const;
  bool operator==(const SignedPermutation& rhs) const = default;
  Matrix dense() const;
};

/// P_1..P_g of size 2^{g-1} with P_j P_k + P_k P_j = 2 delta_{jk} I.
class SpinSystem {
public:
  /// 2 <= g <= 14; DomainError below, ResourceError above.
  explicit SpinSystem(int g);

  int g() const noexcept { return static_cast<int>(gens_.size()); }
  std::size_t size() const noexcept { return gens_.front().size(); }
  const SignedPermutation& generator(int j) const { return gens_[static_cast<std::size_t>(j)]; }
  Matrix dense(int j) const { return generator(j).dense(); }
  SymTuple tuple() const;

  /// Checks the anticommutation relations exactly (integer arithmetic).
  bool car_holds() const;

private:
  std::vector<SignedPermutation> gens_;
};

SpinSystem spin_matrices(int g);

/// ||sum_j P_j (x) P_j||; g <= 8.
double spin_tensor_norm(int g);

/// ||[P_1 ... P_g]|| as a block row; g <= 8.
double spin_row_norm(int g);

/// sum_j P_j (x) X_j for the spin system of size g = X.g().
Matrix spin_pencil_sum(const SymTuple& X);

enum class Ball { oh, spin, min_sampled };

/// "oh", "spin" or "min"; DomainError otherwise.
Ball parse_ball(std::string_view name);

struct BallReport {
  bool member = false;
  /// oh: lambda_max(sum X_j^2); spin: lambda_min(L_P(X)); min: best sampled |v^T X v|.
  double value = 0.0;
  /// True when membership is a one-sided sampled estimate.
  bool sampled = false;
};

BallReport ball_membership(const SymTuple& X, Ball ball, double tol = 1e-10, int samples = 256,
                           std::uint64_t seed = kDefaultSeed);

/// X = scale^{-1} V^T T V with V an isometry and T commuting.
struct DilationResult {
  SymTuple T;
  Matrix V;
  double scale = 1.0;
};

struct DilationResiduals {
  double isometry = 0.0;       // max |V^T V - I|
  double commutator = 0.0;     // max_{j,k} max |T_j T_k - T_k T_j|
  double reconstruction = 0.0; // max_j max |V^T T_j V - scale X_j|
};

DilationResiduals residuals(const DilationResult& r, const SymTuple& X);

/// T_j carries X_j in diagonal block j; V h = g^{-1/2}(h, ..., h); scale 1/g.
DilationResult blockdiag_dilation(const SymTuple& X);

/// (I - S^2)^{1/2} for a symmetric contraction S.
Matrix defect_sqrt(const Matrix& S);

/// [[X_1, X_2], [X_2, -X_1]].
Matrix spin2_lambda(const SymTuple& X);

/// Commuting dilation at scale 1 of a pair in the spin ball, with T_1^2 + T_2^2 = I.
DilationResult spin2_dilation(const SymTuple& X);

/// Choi matrix of the unital map e_{1,i+1} + e_{i+1,1} -> P_i / sqrt(g).
Matrix oh_to_spin_choi(int g);

/// Extreme point of the g = 2 spin ball: X commutes and Lambda(X)^2 = I.
bool spin2_extreme(const SymTuple& X, double tol = 1e-10);

} // namespace spectra::dilation
