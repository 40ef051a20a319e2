#pragma once

// Log-gamma, beta and regularized incomplete beta functions to double precision.

namespace spectra::specfun {

inline constexpr double kLnGammaTol = 1e-13;    // relative to max(1, |ln G(x)|)
inline constexpr double kIncBetaTol = 1e-12;    // absolute
inline constexpr double kIncBetaInvTol = 1e-11; // |I_p(a,b) - y|
inline constexpr int kIncBetaInvMaxIter = 200;

/// Validated (a, b, p) triple for the incomplete beta function.
class BetaArgs {
public:
  /// Throws DomainError unless a > 0, b > 0 and 0 <= p <= 1.
  BetaArgs(double a, double b, double p);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double p() const noexcept { return p_; }

private:
  double a_;
  double b_;
  double p_;
};

double ln_gamma(double x);

/// ln B(a, b).
double ln_beta(double a, double b);

/// I_p(a, b) via a modified-Lentz continued fraction.
double reg_inc_beta(const BetaArgs& args);
double reg_inc_beta(double p, double a, double b);

/// Smallest-residual p with I_p(a, b) = y (bracketed Newton).
double reg_inc_beta_inv(double y, double a, double b);

/// Density of Beta(a, b) at x, i.e. the derivative of I_x(a, b).
double beta_density(double x, double a, double b);

} // namespace spectra::specfun
