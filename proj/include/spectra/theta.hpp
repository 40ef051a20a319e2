#pragma once

// The matrix-cube relaxation constant theta(d) and the quantities feeding it:
// signed sphere moments alpha/beta of J(s,t;a,b), kappa, kappa_*, sigma_{s,t}
// and the auxiliary functions f, g, h on [0,1].

#include <optional>

namespace spectra::theta {

inline constexpr double kSigmaTol = 1e-11;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kKappaCrossTol = 1e-9;
inline constexpr double kClosedFormTol = 1e-12;
inline constexpr double kSearchVsClosedTol = 1e-8;

/// Diagonal matrix a I_s (+) (-b) I_t.
class SignDiag {
public:
  /// Throws DomainError unless s >= 1, t >= 0, a, b >= 0 and a + b > 0.
  SignDiag(int s, int t, double a, double b);

  int s() const noexcept { return s_; }
  int t() const noexcept { return t_; }
  int d() const noexcept { return s_ + t_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

  /// s*a + t*b.
  double trace_abs() const noexcept { return s_ * a_ + t_ * b_; }
  /// Copy rescaled so that s*a + t*b = d.
  SignDiag normalized() const;

private:
  int s_;
  int t_;
  double a_;
  double b_;
};

struct AlphaBeta {
  double alpha;
  double beta;
};

/// Signed coordinate moments of J on the unit sphere. Requires t >= 1.
AlphaBeta alpha_beta(const SignDiag& J);

/// kappa(s,t;a,b) = s a alpha + t b beta, the sphere average of |xi* J xi|.
double kappa(const SignDiag& J);

/// Interior minimizer of f_{s,t}; requires s >= t >= 1.
double sigma_st(int s, int t);

struct FGH {
  double f;
  double g;
  double h;
};

FGH f_g_h(int s, int t, double p);

/// Closed form of h_{s,t}(p) through gamma functions.
double h_closed_form(int s, int t, double p);

struct KappaStar {
  double kappa_star;
  double a_opt;
  double b_opt;
};

/// min over a, b >= 0 with s a + t b = d of kappa(s,t;a,b), located by
/// solving alpha = beta and cross-checked against f_{s,t}(sigma_{s,t}).
KappaStar kappa_star(int s, int t);

struct OddBounds {
  double theta_minus;
  double theta_plus;
  double theta_plusplus;
};

/// Analytic bracket theta_- <= theta(d) <= min(theta_+, theta_++) for odd d >= 3.
OddBounds theta_odd_bounds(int d);

struct ThetaReport {
  int d = 0;
  double theta = 0.0;
  double kappa_star = 0.0;
  int minimizer_s = 0;
  int minimizer_t = 0;
  double p_opt = 0.0;
  std::optional<OddBounds> bounds_odd;
};

/// theta(d) by exhaustive search over s + t = d, checked against the known
/// minimizer and (even d) both closed forms.
ThetaReport theta(int d);

/// sqrt(pi) G(1 + d/4) / G(1/2 + d/4).
double theta_even_closed_form(int d);

/// 2 I_{1/2}(d/4, d/4 + 1) - 1, the even-d value of 1/theta(d).
double inv_theta_even_beta_form(int d);

} // namespace spectra::theta
