#include "spectra/betastats.hpp"

#include "spectra/errors.hpp"
#include "spectra/roots.hpp"
#include "spectra/specfun.hpp"

#include <cmath>
#include <sstream>

namespace spectra::betastats {

namespace {

std::string shape_str(double s, double t) {
  std::ostringstream os;
  os.precision(17);
  os << "(s=" << s << ", t=" << t << ")";
  return os.str();
}

} // namespace

BetaShape::BetaShape(double s, double t) : s_(s), t_(t) {
  if (!(s > 0.0) || !std::isfinite(s) || !(t >= 0.0) || !std::isfinite(t))
    throw DomainError("beta shape requires s > 0 and t >= 0 " + shape_str(s, t));
}

double equipoint_residual(const BetaShape& shape, double e) {
  const double s = shape.s();
  const double t = shape.t();
  return specfun::reg_inc_beta(e, s, t + 1.0) + specfun::reg_inc_beta(e, s + 1.0, t) - 1.0;
}

double equipoint(const BetaShape& shape) {
  // Degenerate convention: Beta(s+1, 0) is a point mass at 1.
  if (shape.t() == 0.0) return 1.0;
  if (shape.s() == shape.t()) return 0.5;
  const double e = roots::bisect([&](double x) { return equipoint_residual(shape, x); }, 0.0, 1.0,
                                 kEquipointWidth);
  if (std::fabs(equipoint_residual(shape, e)) > kEquipointTol)
    throw NumericError("equipoint residual above tolerance " + shape_str(shape.s(), shape.t()));
  return e;
}

double median(const BetaShape& shape) {
  if (shape.t() == 0.0)
    throw DomainError("median requires t > 0 " + shape_str(shape.s(), shape.t()));
  if (shape.s() == shape.t()) return 0.5;
  const double m = specfun::reg_inc_beta_inv(0.5, shape.s(), shape.t());
  if (std::fabs(specfun::reg_inc_beta(m, shape.s(), shape.t()) - 0.5) > kMedianTol)
    throw NumericError("median residual above tolerance " + shape_str(shape.s(), shape.t()));
  return m;
}

Interval median_bounds(const BetaShape& shape) {
  const double s = shape.s();
  const double t = shape.t();
  if (!(t >= 1.0 && t <= s && s + t >= 3.0))
    throw DomainError("median bounds need 1 <= t <= s and s + t >= 3 " + shape_str(s, t));
  const double mu = s / (s + t);
  return {mu, mu + (s - t) / ((s + t) * (s + t))};
}

Interval equipoint_bounds(const BetaShape& shape) {
  const double s = shape.s();
  const double t = shape.t();
  if (!(t > 0.0 && t <= s))
    throw DomainError("equipoint bounds need 0 < t <= s " + shape_str(s, t));
  return {(s + 1.0) / (s + t + 2.0), s / (s + t)};
}

PhiValues phi_functions(double s, double d) {
  if (!(s > 0.0 && s < d) || !std::isfinite(d))
    throw DomainError("phi functions need 0 < s < d " + shape_str(s, d - s));
  const double t = d - s;
  const double e = equipoint(BetaShape(s, t));
  return {specfun::reg_inc_beta(e, s, t + 1.0), specfun::reg_inc_beta(s / d, s, t + 1.0)};
}

double binom_tail(double p, int s, int d) {
  if (d < 1 || s < 0 || s > d || !(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "binom_tail needs d >= 1, 0 <= s <= d, p in [0,1]; got p=" << p << " s=" << s << " d=" << d;
    throw DomainError(os.str());
  }
  if (s == 0) return 1.0;
  return specfun::reg_inc_beta(p, static_cast<double>(s), static_cast<double>(d - s + 1));
}

std::vector<ConjectureViolation> real_simmons_scan(double step, double s_max) {
  if (!(step > 0.0) || !(s_max >= step))
    throw DomainError("real_simmons_scan needs step > 0 and s_max >= step");
  std::vector<ConjectureViolation> out;
  const int n = static_cast<int>(std::floor(s_max / step + 1e-9));
  for (int j = 1; j <= n; ++j) {
    const double t = j * step;
    for (int i = j + 1; i <= n; ++i) {
      const double s = i * step;
      const double e = equipoint(BetaShape(s, t));
      const double mu = s / (s + t);
      if (e > mu + kEquipointWidth) out.push_back({s, t, e, mu});
    }
  }
  return out;
}

} // namespace spectra::betastats
