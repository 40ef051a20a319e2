#pragma once

// Central-tendency quantities of the Beta distribution: equipoints, medians,
// means, their analytic bounds, and the one-step monotone CDF functions.

#include <utility>
#include <vector>

namespace spectra::betastats {

inline constexpr double kEquipointWidth = 1e-13;
inline constexpr double kEquipointTol = 1e-11;
inline constexpr double kMedianTol = 1e-11;

/// Shape pair (s, t) of Beta(s, t); t == 0 is allowed only for the
/// degenerate equipoint convention e_{s,0} = 1.
class BetaShape {
public:
  BetaShape(double s, double t);

  double s() const noexcept { return s_; }
  double t() const noexcept { return t_; }
  double d() const noexcept { return s_ + t_; }
  double mean() const noexcept { return s_ / (s_ + t_); }

private:
  double s_;
  double t_;
};

struct Interval {
  double lower;
  double upper;
};

/// Root of I_e(s, t+1) + I_e(s+1, t) = 1.
double equipoint(const BetaShape& shape);

/// Residual I_e(s, t+1) + I_e(s+1, t) - 1.
double equipoint_residual(const BetaShape& shape, double e);

/// Root of I_m(s, t) = 1/2. Requires t > 0.
double median(const BetaShape& shape);

/// (mu, mu + (s-t)/(s+t)^2) for 1 <= t <= s, s + t >= 3.
Interval median_bounds(const BetaShape& shape);

/// ((s+1)/(s+t+2), s/(s+t)) for 0 < t <= s. The upper bound is a theorem only
/// for half-integer shapes.
Interval equipoint_bounds(const BetaShape& shape);

struct PhiValues {
  double phi;
  double phi_hat;
};

/// Phi(s) = I_{e_{s,d-s}}(s, d-s+1), Phi_hat(s) = I_{s/d}(s, d-s+1).
PhiValues phi_functions(double s, double d);

/// P(S >= s) for S ~ Bin(d, p).
double binom_tail(double p, int s, int d);

struct ConjectureViolation {
  double s;
  double t;
  double equipoint;
  double mean;
};

/// Scans real shapes t <= s on a grid of the given step up to s_max and
/// returns every point where e_{s,t} > s/(s+t). Report-only: the inequality
/// is only proven for half-integer shapes.
std::vector<ConjectureViolation> real_simmons_scan(double step, double s_max);

} // namespace spectra::betastats
