#include "spectra/theta.hpp"

#include "spectra/betastats.hpp"
#include "spectra/errors.hpp"
#include "spectra/parallel.hpp"
#include "spectra/roots.hpp"
#include "spectra/specfun.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace spectra::theta {

using specfun::ln_gamma;
using specfun::reg_inc_beta;

namespace {

std::string st_str(int s, int t) {
  std::ostringstream os;
  os << "(s=" << s << ", t=" << t << ")";
  return os.str();
}

void require_positive_split(int s, int t, const char* who) {
  if (s < 1 || t < 1) throw DomainError(std::string(who) + " requires s, t >= 1 " + st_str(s, t));
}

// I_p(s/2, 1+t/2) - I_{1-p}(t/2, 1+s/2); increasing in p, zero at sigma_{s,t}.
double sigma_residual(int s, int t, double p) {
  const double hs = 0.5 * s;
  const double ht = 0.5 * t;
  return reg_inc_beta(p, hs, 1.0 + ht) - reg_inc_beta(1.0 - p, ht, 1.0 + hs);
}

// Trace-normalized J(s,t;a,b) with b/(a+b) = p.
SignDiag sign_diag_at(int s, int t, double p) {
  const double d = s + t;
  const double denom = s * (1.0 - p) + t * p;
  return SignDiag(s, t, (1.0 - p) * d / denom, p * d / denom);
}

// sigma for any s, t >= 1 using f_{s,t}(p) = f_{t,s}(1-p).
double sigma_any(int s, int t) {
  return s >= t ? sigma_st(s, t) : 1.0 - sigma_st(t, s);
}

} // namespace

SignDiag::SignDiag(int s, int t, double a, double b) : s_(s), t_(t), a_(a), b_(b) {
  if (s < 1 || t < 0) throw DomainError("SignDiag needs s >= 1 and t >= 0 " + st_str(s, t));
  if (!(a >= 0.0) || !(b >= 0.0) || !(a + b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("SignDiag needs a, b >= 0 with a + b > 0");
}

SignDiag SignDiag::normalized() const {
  const double scale = d() / trace_abs();
  return SignDiag(s_, t_, a_ * scale, b_ * scale);
}

AlphaBeta alpha_beta(const SignDiag& J) {
  require_positive_split(J.s(), J.t(), "alpha_beta");
  const double d = J.d();
  const double hs = 0.5 * J.s();
  const double ht = 0.5 * J.t();
  const double pa = J.a() / (J.a() + J.b());
  const double pb = J.b() / (J.a() + J.b());
  return {(2.0 * reg_inc_beta(pa, ht, hs + 1.0) - 1.0) / d,
          (2.0 * reg_inc_beta(pb, hs, ht + 1.0) - 1.0) / d};
}

double kappa(const SignDiag& J) {
  if (J.t() == 0) return J.a(); // |xi* (a I) xi| = a on the sphere
  const auto [alpha, beta] = alpha_beta(J);
  return J.s() * J.a() * alpha + J.t() * J.b() * beta;
}

double sigma_st(int s, int t) {
  if (t < 1 || s < t) throw DomainError("sigma_st requires s >= t >= 1 " + st_str(s, t));
  if (s == t) return 0.5;
  const double lo = (s + 2.0) / (s + t + 4.0);
  const double hi = static_cast<double>(s) / (s + t);
  const auto residual = [s, t](double p) { return sigma_residual(s, t, p); };
  const double rlo = residual(lo);
  const double rhi = residual(hi);
  if (rlo > 0.0 || rhi < 0.0)
    throw NumericError("sigma_st: defining equation not bracketed by the analytic bounds " + st_str(s, t));
  const double sigma = roots::brent(residual, lo, hi, 1e-15);
  if (std::fabs(residual(sigma)) > kSigmaTol)
    throw NumericError("sigma_st: residual above tolerance " + st_str(s, t));
  return sigma;
}

FGH f_g_h(int s, int t, double p) {
  require_positive_split(s, t, "f_g_h");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("f_g_h requires p in [0,1]");
  const double hs = 0.5 * s;
  const double ht = 0.5 * t;
  const double ip = reg_inc_beta(p, hs, 1.0 + ht);
  const double iq = reg_inc_beta(1.0 - p, ht, 1.0 + hs);
  const double f = (2.0 * (1.0 - p) * s * iq + 2.0 * p * t * ip) / ((1.0 - p) * s + p * t) - 1.0;
  const double g = 2.0 * (s * iq + t * ip) / (s + t) - 1.0;
  const double h = iq + ip - 1.0;
  return {f, g, h};
}

double h_closed_form(int s, int t, double p) {
  require_positive_split(s, t, "h_closed_form");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("h_closed_form requires p in [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  const double hs = 0.5 * s;
  const double ht = 0.5 * t;
  return std::exp(ln_gamma(hs + ht + 1.0) - ln_gamma(hs + 1.0) - ln_gamma(ht + 1.0) +
                  hs * std::log(p) + ht * std::log1p(-p));
}

KappaStar kappa_star(int s, int t) {
  require_positive_split(s, t, "kappa_star");
  // alpha - beta is strictly decreasing in p = b/(a+b): +2/d at 0, -2/d at 1.
  const auto gap = [s, t](double p) {
    const auto ab = alpha_beta(sign_diag_at(s, t, p));
    return ab.alpha - ab.beta;
  };
  const double p = (s == t) ? 0.5 : roots::brent(gap, 0.0, 1.0, 1e-15);
  const SignDiag J = sign_diag_at(s, t, p);
  const auto ab = alpha_beta(J);
  const double d = s + t;
  if (std::fabs(ab.alpha - ab.beta) > kSigmaTol)
    throw NumericError("kappa_star: alpha != beta at the located root " + st_str(s, t));
  if (std::fabs(J.trace_abs() - d) > kTraceTol)
    throw NumericError("kappa_star: trace normalization lost " + st_str(s, t));
  const double k = kappa(J);
  const double via_f = f_g_h(s, t, sigma_any(s, t)).f;
  if (std::fabs(k - via_f) > kKappaCrossTol) {
    std::ostringstream os;
    os.precision(17);
    os << "kappa_star: alpha=beta route " << k << " disagrees with f(sigma) route " << via_f << ' '
       << st_str(s, t);
    throw NumericError(os.str());
  }
  return {k, J.a(), J.b()};
}

double theta_even_closed_form(int d) {
  if (d < 2 || d % 2 != 0) throw DomainError("theta_even_closed_form requires even d >= 2");
  const double q = 0.25 * d;
  return std::sqrt(std::numbers::pi) * std::exp(ln_gamma(1.0 + q) - ln_gamma(0.5 + q));
}

double inv_theta_even_beta_form(int d) {
  if (d < 2 || d % 2 != 0) throw DomainError("inv_theta_even_beta_form requires even d >= 2");
  const double q = 0.25 * d;
  return 2.0 * reg_inc_beta(0.5, q, q + 1.0) - 1.0;
}

OddBounds theta_odd_bounds(int d) {
  if (d < 3 || d % 2 == 0) throw DomainError("theta_odd_bounds requires odd d >= 3");
  const double dd = d;
  const double plusplus =
      std::sqrt(0.5 * std::numbers::pi) * std::exp(ln_gamma(0.5 * (dd + 3.0)) - ln_gamma(0.5 * dd + 1.0));
  const double log_prefactor =
      0.25 * (2.0 * dd * std::log(dd) - (dd + 1.0) * std::log(dd + 1.0) - (dd - 1.0) * std::log(dd - 1.0));
  const double minus = std::exp(log_prefactor) * plusplus;
  const double inv_plus =
      (dd - 1.0) / dd * reg_inc_beta((dd + 1.0) / (2.0 * dd), (dd + 1.0) / 4.0, (dd + 3.0) / 4.0) +
      (dd + 1.0) / dd * reg_inc_beta((dd - 1.0) / (2.0 * dd), (dd - 1.0) / 4.0, (dd + 5.0) / 4.0) - 1.0;
  return {minus, 1.0 / inv_plus, plusplus};
}

ThetaReport theta(int d) {
  if (d < 1) throw DomainError("theta requires d >= 1");
  const int s_first = (d + 1) / 2;
  const int count = d - s_first + 1;
  std::vector<double> kappas(static_cast<std::size_t>(count));
  parallel::parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
    const int s = s_first + static_cast<int>(i);
    const int t = d - s;
    kappas[i] = (t == 0) ? 1.0 : kappa_star(s, t).kappa_star;
  });

  // Ascending scan with strict comparison keeps the smallest s on ties.
  std::size_t best = 0;
  for (std::size_t i = 1; i < kappas.size(); ++i)
    if (kappas[i] < kappas[best]) best = i;

  ThetaReport report;
  report.d = d;
  report.minimizer_s = s_first + static_cast<int>(best);
  report.minimizer_t = d - report.minimizer_s;
  const int expected_s = (d % 2 == 0) ? d / 2 : (d + 1) / 2;
  if (report.minimizer_s != expected_s) {
    std::ostringstream os;
    os << "theta(" << d << "): search minimizer s=" << report.minimizer_s << " differs from expected s="
       << expected_s;
    throw NumericError(os.str());
  }
  const double kappa_min = kappas[best];

  if (d % 2 == 0) {
    const double closed = theta_even_closed_form(d);
    const double beta_form = inv_theta_even_beta_form(d);
    if (std::fabs(beta_form - 1.0 / closed) > kClosedFormTol)
      throw NumericError("theta: even-d closed forms disagree at d=" + std::to_string(d));
    if (std::fabs(kappa_min - 1.0 / closed) > kSearchVsClosedTol)
      throw NumericError("theta: search minimum disagrees with closed form at d=" + std::to_string(d));
    report.theta = closed;
    report.p_opt = 0.5;
  } else {
    report.theta = 1.0 / kappa_min;
    report.p_opt = (d == 1) ? 1.0 : sigma_st(report.minimizer_s, report.minimizer_t);
    if (d >= 3) report.bounds_odd = theta_odd_bounds(d);
  }
  report.kappa_star = 1.0 / report.theta;
  return report;
}

} // namespace spectra::theta
