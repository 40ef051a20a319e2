#include <doctest.h>

#include "spectra/errors.hpp"
#include "spectra/sphere_oracle.hpp"
#include "spectra/theta.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <numbers>

using namespace spectra;
using namespace spectra::sphere_oracle;
using theta::SignDiag;

namespace {

constexpr std::uint64_t kN = 200'000;

bool within(double est, double se, double target, double sigmas) { return std::fabs(est - target) <= sigmas * se; }

} // namespace

TEST_CASE("sphere points are unit vectors and reproducible") {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const Vector v = sphere_point(5, 3, i);
    CHECK(std::fabs(v.norm() - 1.0) < 1e-14);
    CHECK(v == sphere_point(5, 3, i));
  }
  CHECK(sphere_point(5, 3, 0) != sphere_point(5, 4, 0));
}

TEST_CASE("identity integrand is exactly one") {
  const auto est = sphere_abs_quadratic_integral(Matrix::Identity(4, 4), 10'000, kDefaultSeed);
  CHECK(std::fabs(est.value - 1.0) < 1e-14);
  CHECK(est.std_err < 1e-12);
  CHECK(est.n_samples == 10'000);
  CHECK(est.seed == kDefaultSeed);
}

TEST_CASE("known sphere integrals") {
  const auto j11 = sphere_abs_quadratic_integral(to_matrix(SignDiag(1, 1, 1, 1)), kN, 1);
  CHECK(within(j11.value, j11.std_err, 2.0 / std::numbers::pi, 3.0));
  const auto j22 = sphere_abs_quadratic_integral(to_matrix(SignDiag(2, 2, 1, 1)), kN, 2);
  CHECK(within(j22.value, j22.std_err, 0.5, 3.0));
}

TEST_CASE("closed-form kappa matches the oracle") {
  const SignDiag cases[] = {SignDiag(2, 1, 0.8, 1.4), SignDiag(3, 2, 1.5, 0.25), SignDiag(1, 4, 2.0, 0.5)};
  for (const auto& J : cases) {
    const auto est = sphere_abs_quadratic_integral(to_matrix(J), kN, 5);
    CAPTURE(J.s());
    CAPTURE(J.t());
    CHECK(within(est.value, est.std_err, theta::kappa(J), 3.0));
  }
}

TEST_CASE("signed coordinate moments") {
  const SignDiag j11(1, 1, 1, 1);
  const auto m1 = sign_quadratic_moment(j11, 1, kN, 7);
  CHECK(within(m1.value, m1.std_err, theta::alpha_beta(j11).alpha, 3.0));

  const auto k = theta::kappa_star(2, 1);
  const SignDiag J(2, 1, k.a_opt, k.b_opt);
  const auto ab = theta::alpha_beta(J);
  const auto a1 = sign_quadratic_moment(J, 1, kN, 9);
  CHECK(within(a1.value, a1.std_err, ab.alpha, 3.0));
  // the t-block coordinates carry -beta
  const auto b3 = sign_quadratic_moment(J, 3, kN, 9);
  CHECK(within(b3.value, b3.std_err, -ab.beta, 3.0));

  const SignDiag J22(2, 2, 1, 1);
  const auto x = theta::alpha_beta(J22);
  const auto c1 = sign_quadratic_moment(J22, 1, kN, 11);
  CHECK(within(c1.value, c1.std_err, x.alpha, 3.0));
  CHECK(std::fabs(x.alpha - x.beta) < 1e-15);

  // alpha does not depend on which coordinate of the s-block is used
  const SignDiag J31(3, 1, 1.0, 1.0);
  const auto u = sign_quadratic_moment(J31, 1, kN, 13);
  const auto v = sign_quadratic_moment(J31, 3, kN, 17);
  CHECK(std::fabs(u.value - v.value) <= 4.0 * std::hypot(u.std_err, v.std_err));

  CHECK_THROWS_AS(sign_quadratic_moment(J31, 0, 10, 1), DomainError);
  CHECK_THROWS_AS(sign_quadratic_moment(J31, 5, 10, 1), DomainError);
}

TEST_CASE("E_J matrices") {
  const std::uint64_t n = 100'000;
  const auto e11 = e_j_matrix(SignDiag(1, 1, 1, 1), n, 19);
  CHECK(within(e11.value(0, 0), e11.std_err(0, 0), 1.0 / std::numbers::pi, 4.0));
  CHECK(within(e11.value(1, 1), e11.std_err(1, 1), -1.0 / std::numbers::pi, 4.0));
  CHECK(within(e11.value(0, 1), e11.std_err(0, 1), 0.0, 4.0));

  const auto k = theta::kappa_star(2, 2);
  const auto e22 = e_j_matrix(SignDiag(2, 2, k.a_opt, k.b_opt), n, 23);
  const Matrix target = (k.kappa_star / 4.0) * to_matrix(SignDiag(2, 2, 1, 1));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(within(e22.value(i, j), e22.std_err(i, j), target(i, j), 4.0));
    }
}

TEST_CASE("zero padding scales E_J by d/(d+u)") {
  const std::uint64_t n = 200'000;
  const SignDiag J(2, 1, 1.2, 0.6);
  const Matrix B = to_matrix(J);
  const int u = 2;
  Matrix padded = Matrix::Zero(5, 5);
  padded.topLeftCorner(3, 3) = B;
  const auto plain = e_j_matrix(B, n, 29);
  const auto pad = e_j_matrix(padded, n, 31);
  const double ratio = 3.0 / (3.0 + u);
  for (int i = 0; i < 3; ++i) {
    CAPTURE(i);
    const double se = std::hypot(pad.std_err(i, i), ratio * plain.std_err(i, i));
    CHECK(std::fabs(pad.value(i, i) - ratio * plain.value(i, i)) <= 4.0 * se);
  }
}

TEST_CASE("trace(E_J J) is positive") {
  for (const auto& J : {SignDiag(1, 1, 1, 1), SignDiag(3, 1, 0.2, 2.0), SignDiag(2, 0, 1, 0)}) {
    const auto e = e_j_matrix(J, 20'000, 37);
    CHECK((e.value * to_matrix(J)).trace() > 0.0);
  }
}

TEST_CASE("estimates do not depend on the worker count") {
  const Matrix B = to_matrix(SignDiag(3, 2, 1.1, 0.9));
  const char* old = std::getenv("SPECTRA_THETA_THREADS");
  const std::string saved = old ? old : "";
  setenv("SPECTRA_THETA_THREADS", "1", 1);
  const auto one = sphere_abs_quadratic_integral(B, 50'000, 41);
  const auto ej1 = e_j_matrix(B, 20'000, 43);
  setenv("SPECTRA_THETA_THREADS", "4", 1);
  const auto four = sphere_abs_quadratic_integral(B, 50'000, 41);
  const auto ej4 = e_j_matrix(B, 20'000, 43);
  setenv("SPECTRA_THETA_THREADS", "7", 1);
  const auto seven = sphere_abs_quadratic_integral(B, 50'000, 41);
  if (old)
    setenv("SPECTRA_THETA_THREADS", saved.c_str(), 1);
  else
    unsetenv("SPECTRA_THETA_THREADS");
  CHECK(std::memcmp(&one.value, &four.value, sizeof(double)) == 0);
  CHECK(std::memcmp(&one.value, &seven.value, sizeof(double)) == 0);
  CHECK(std::memcmp(&one.std_err, &seven.std_err, sizeof(double)) == 0);
  CHECK(ej1.value == ej4.value);
}

TEST_CASE("halving the sample count stays consistent") {
  const Matrix B = to_matrix(SignDiag(2, 3, 1.0, 0.5));
  const auto big = sphere_abs_quadratic_integral(B, 200'000, 47);
  const auto small = sphere_abs_quadratic_integral(B, 100'000, 53);
  CHECK(std::fabs(big.value - small.value) <= 4.0 * std::hypot(big.std_err, small.std_err));
  CHECK(small.std_err > big.std_err);
  CHECK(small.std_err / big.std_err == doctest::Approx(std::sqrt(2.0)).epsilon(0.05));
}

TEST_CASE("invalid inputs") {
  Matrix B(2, 2);
  B << 1, 2, 0, 1;
  CHECK_THROWS_AS(sphere_abs_quadratic_integral(B, 10, 1), DomainError);
  CHECK_THROWS_AS(sphere_abs_quadratic_integral(Matrix::Identity(2, 2), 0, 1), DomainError);
  CHECK_THROWS_AS(e_j_matrix(Matrix(2, 3), 10, 1), DomainError);
}
