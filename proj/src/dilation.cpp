#include "spectra/dilation.hpp"

#include "spectra/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace spectra::dilation {

namespace {

SignedPermutation sigma0() { return {{0, 1}, {1, 1}}; }
SignedPermutation sigma1() { return {{0, 1}, {1, -1}}; }
SignedPermutation sigma2() { return {{1, 0}, {1, 1}}; }

SignedPermutation kron(const SignedPermutation& a, const SignedPermutation& b) {
  const std::size_t nb = b.size();
  SignedPermutation out;
  out.perm.resize(a.size() * nb);
  out.sign.resize(a.size() * nb);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < nb; ++k) {
      const std::size_t row = i * nb + k;
      out.perm[row] = static_cast<std::uint32_t>(a.perm[i] * nb + b.perm[k]);
      out.sign[row] = static_cast<std::int8_t>(a.sign[i] * b.sign[k]);
    }
  return out;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_g2(const SymTuple& X, const char* who) {
  if (X.g() != 2) throw DomainError(std::string(who) + " is defined for g = 2 only");
}

// Power iteration for ||M|| where M = sum of signed permutations (symmetric).
double signed_perm_sum_norm(const std::vector<SignedPermutation>& terms) {
  const std::size_t n = terms.front().size();
  CounterRng rng(kDefaultSeed, n);
  Vector v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = rng.normal();
  v.normalize();
  Vector w(v.size());
  double estimate = 0.0;
  for (int iter = 0; iter < 10000; ++iter) {
    w.setZero();
    for (const auto& p : terms)
      for (std::size_t i = 0; i < n; ++i)
        w(static_cast<Eigen::Index>(i)) += p.sign[i] * v(static_cast<Eigen::Index>(p.perm[i]));
    const double next = w.norm();
    v = w / next;
    if (std::fabs(next - estimate) <= 1e-15 * next) return next;
    estimate = next;
  }
  return estimate;
}

} // namespace

SignedPermutation SignedPermutation::operator*(const SignedPermutation& rhs) const {
  SignedPermutation out;
  out.perm.resize(size());
  out.sign.resize(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out.perm[i] = rhs.perm[perm[i]];
    out.sign[i] = static_cast<std::int8_t>(sign[i] * rhs.sign[perm[i]]);
  }
  return out;
}

Matrix SignedPermutation::dense() const {
  const auto n = static_cast<Eigen::Index>(size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, perm[static_cast<std::size_t>(i)]) = sign[static_cast<std::size_t>(i)];
  return m;
}

SpinSystem::SpinSystem(int g) {
  if (g < 2) throw DomainError("spin system requires g >= 2");
  if (g > kMaxSpinG) throw ResourceError("spin system capped at g <= " + std::to_string(kMaxSpinG));
  const int factors = g - 1;
  for (int j = 1; j <= g; ++j) {
    // P_j = sigma2^{(j-1)} (x) sigma1 (x) sigma0^{(g-j-1)} for j < g; P_g = sigma2^{(g-1)}.
    SignedPermutation p{{0}, {1}};
    for (int f = 1; f <= factors; ++f) {
      SignedPermutation factor;
      if (j == g || f < j) factor = sigma2();
      else if (f == j) factor = sigma1();
      else factor = sigma0();
      p = kron(p, factor);
    }
    gens_.push_back(std::move(p));
  }
}

SymTuple SpinSystem::tuple() const {
  std::vector<Matrix> mats;
  mats.reserve(gens_.size());
  for (const auto& p : gens_) mats.push_back(p.dense());
  return SymTuple(std::move(mats));
}

bool SpinSystem::car_holds() const {
  for (std::size_t j = 0; j < gens_.size(); ++j) {
    const SignedPermutation sq = gens_[j] * gens_[j];
    for (std::size_t i = 0; i < sq.size(); ++i)
      if (sq.perm[i] != i || sq.sign[i] != 1) return false;
    for (std::size_t k = j + 1; k < gens_.size(); ++k) {
      const SignedPermutation jk = gens_[j] * gens_[k];
      const SignedPermutation kj = gens_[k] * gens_[j];
      for (std::size_t i = 0; i < jk.size(); ++i)
        if (jk.perm[i] != kj.perm[i] || jk.sign[i] != -kj.sign[i]) return false;
    }
  }
  return true;
}

SpinSystem spin_matrices(int g) { return SpinSystem(g); }

double spin_tensor_norm(int g) {
  if (g > kMaxSpinTensorG) throw ResourceError("spin_tensor_norm capped at g <= " + std::to_string(kMaxSpinTensorG));
  const SpinSystem spin(g);
  std::vector<SignedPermutation> terms;
  for (int j = 0; j < g; ++j) terms.push_back(kron(spin.generator(j), spin.generator(j)));
  if (terms.front().size() <= 1024) {
    const auto n = static_cast<Eigen::Index>(terms.front().size());
    Matrix sum = Matrix::Zero(n, n);
    for (const auto& t : terms) sum += t.dense();
    return linalg::sym_norm(sum);
  }
  return signed_perm_sum_norm(terms);
}

double spin_row_norm(int g) {
  if (g > kMaxSpinTensorG) throw ResourceError("spin_row_norm capped at g <= " + std::to_string(kMaxSpinTensorG));
  const SpinSystem spin(g);
  const auto n = static_cast<Eigen::Index>(spin.size());
  Matrix row(n, n * g);
  for (int j = 0; j < g; ++j) row.middleCols(j * n, n) = spin.dense(j);
  return linalg::op_norm(row);
}

Matrix spin_pencil_sum(const SymTuple& X) {
  if (X.g() > kMaxSpinTensorG) throw ResourceError("spin pencil capped at g <= " + std::to_string(kMaxSpinTensorG));
  if (X.g() == 1) return X[0];
  const SpinSystem spin(X.g());
  return pencil::tensor_sum(spin.tuple(), X);
}

Ball parse_ball(std::string_view name) {
  if (name == "oh") return Ball::oh;
  if (name == "spin") return Ball::spin;
  if (name == "min" || name == "min_sampled") return Ball::min_sampled;
  throw DomainError("unknown ball '" + std::string(name) + "' (expected oh, spin or min)");
}

BallReport ball_membership(const SymTuple& X, Ball ball, double tol, int samples, std::uint64_t seed) {
  if (!(tol >= 0.0)) throw DomainError("ball_membership: tolerance must be nonnegative");
  BallReport report;
  switch (ball) {
  case Ball::oh: {
    Matrix sq = Matrix::Zero(X.n(), X.n());
    for (int j = 0; j < X.g(); ++j) sq += X[j] * X[j];
    report.value = linalg::lambda_max(sq);
    report.member = report.value <= 1.0 + tol;
    break;
  }
  case Ball::spin: {
    Matrix l = -spin_pencil_sum(X);
    l.diagonal().array() += 1.0;
    report.value = linalg::lambda_min(l);
    report.member = report.value >= -tol;
    break;
  }
  case Ball::min_sampled: {
    if (samples < 1) throw DomainError("ball_membership: min ball needs samples >= 1");
    // Alternating ascent of max_{|v|=1,|w|=1} sum_j w_j v^T X_j v from sampled w.
    const int g = X.g();
    double best = 0.0;
    for (int k = 0; k < samples + 2 * g; ++k) {
      Vector w = Vector::Zero(g);
      if (k < 2 * g) {
        w(k / 2) = (k % 2 == 0) ? 1.0 : -1.0;
      } else {
        CounterRng rng(seed, static_cast<std::uint64_t>(k));
        for (int j = 0; j < g; ++j) w(j) = rng.normal();
        w.normalize();
      }
      double value = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        Matrix comb = Matrix::Zero(X.n(), X.n());
        for (int j = 0; j < g; ++j) comb += w(j) * X[j];
        Eigen::SelfAdjointEigenSolver<Matrix> es(comb);
        const Vector v = es.eigenvectors().col(X.n() - 1);
        Vector y(g);
        for (int j = 0; j < g; ++j) y(j) = v.dot(X[j] * v);
        const double next = y.norm();
        if (next == 0.0) break;
        w = y / next;
        const bool stalled = next <= value + 1e-15;
        value = std::max(value, next);
        if (stalled) break;
      }
      best = std::max(best, value);
    }
    report.value = best;
    report.member = best <= 1.0 + tol;
    report.sampled = true;
    break;
  }
  }
  return report;
}

DilationResiduals residuals(const DilationResult& r, const SymTuple& X) {
  DilationResiduals out;
  const Eigen::Index n = r.V.cols();
  out.isometry = max_abs(r.V.transpose() * r.V - Matrix::Identity(n, n));
  for (int j = 0; j < r.T.g(); ++j) {
    out.reconstruction =
        std::max(out.reconstruction, max_abs(r.V.transpose() * r.T[j] * r.V - r.scale * X[j]));
    for (int k = j + 1; k < r.T.g(); ++k)
      out.commutator = std::max(out.commutator, max_abs(r.T[j] * r.T[k] - r.T[k] * r.T[j]));
  }
  return out;
}

DilationResult blockdiag_dilation(const SymTuple& X) {
  const int g = X.g();
  const int n = X.n();
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<std::size_t>(g));
  for (int j = 0; j < g; ++j) {
    Matrix t = Matrix::Zero(g * n, g * n);
    t.block(j * n, j * n, n, n) = X[j];
    blocks.push_back(std::move(t));
  }
  Matrix v(g * n, n);
  const double c = 1.0 / std::sqrt(static_cast<double>(g));
  for (int j = 0; j < g; ++j) v.middleRows(j * n, n) = c * Matrix::Identity(n, n);
  return {SymTuple(std::move(blocks)), std::move(v), 1.0 / g};
}

Matrix defect_sqrt(const Matrix& S) {
  if (!linalg::is_symmetric(S)) throw DomainError("defect_sqrt: S is not symmetric");
  if (linalg::sym_norm(S) > 1.0 + kDefectClamp) throw DomainError("defect_sqrt: S is not a contraction");
  return linalg::sym_apply(S, [](double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); });
}

Matrix spin2_lambda(const SymTuple& X) {
  require_g2(X, "spin2_lambda");
  const int n = X.n();
  Matrix s(2 * n, 2 * n);
  s << X[0], X[1], X[1], -X[0];
  return s;
}

DilationResult spin2_dilation(const SymTuple& X) {
  const Matrix s = spin2_lambda(X);
  if (linalg::sym_norm(s) > 1.0 + kSpinBallTol) throw DomainError("spin2_dilation: X is not in the spin ball");
  const int n = X.n();
  // Defect of S; its blocks have the shape [[d, e], [-e, d]].
  const Matrix defect = linalg::sym_apply(s, [](double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); });
  const Matrix d = 0.5 * (defect.topLeftCorner(n, n) + defect.bottomRightCorner(n, n));
  const Matrix e = 0.5 * (defect.topRightCorner(n, n) - defect.bottomLeftCorner(n, n));
  Matrix t1(2 * n, 2 * n);
  Matrix t2(2 * n, 2 * n);
  t1 << X[0], e, -e, X[0];
  t2 << X[1], d, d, -X[1];
  t1 = 0.5 * (t1 + t1.transpose()).eval();
  t2 = 0.5 * (t2 + t2.transpose()).eval();
  Matrix v = Matrix::Zero(2 * n, n);
  v.topRows(n) = Matrix::Identity(n, n);
  return {SymTuple({std::move(t1), std::move(t2)}), std::move(v), 1.0};
}

Matrix oh_to_spin_choi(int g) {
  if (g > kMaxChoiG) throw ResourceError("oh_to_spin_choi capped at g <= " + std::to_string(kMaxChoiG));
  const SpinSystem spin(g);
  const auto n = static_cast<Eigen::Index>(spin.size());
  Matrix col(n * g, n);
  for (int j = 0; j < g; ++j) col.middleRows(j * n, n) = spin.dense(j);
  Matrix c = Matrix::Zero(n * (g + 1), n * (g + 1));
  c.topLeftCorner(n, n) = 0.5 * Matrix::Identity(n, n);
  const double off = 1.0 / (2.0 * std::sqrt(static_cast<double>(g)));
  c.block(0, n, n, n * g) = off * col.transpose();
  c.block(n, 0, n * g, n) = off * col;
  c.bottomRightCorner(n * g, n * g) = (1.0 / (2.0 * g)) * col * col.transpose();
  return c;
}

bool spin2_extreme(const SymTuple& X, double tol) {
  require_g2(X, "spin2_extreme");
  const Matrix comm = X[0] * X[1] - X[1] * X[0];
  const Matrix lam = spin2_lambda(X);
  const Matrix defect = lam * lam - Matrix::Identity(lam.rows(), lam.cols());
  return linalg::op_norm(comm) <= tol && linalg::sym_norm(defect) <= tol;
}

} // namespace spectra::dilation
