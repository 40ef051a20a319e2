#include "spectra/cli.hpp"

#include "spectra/betastats.hpp"
#include "spectra/dilation.hpp"
#include "spectra/errors.hpp"
#include "spectra/parallel.hpp"
#include "spectra/pencil.hpp"
#include "spectra/serialize.hpp"
#include "spectra/sphere_oracle.hpp"
#include "spectra/theta.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace spectra::cli {

namespace {

enum class Format { csv, json };

struct RunConfig {
  int d_max = 0;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t samples = 0;
  Format format = Format::csv;
  std::string out;
  double grid_step = 0.0;
  double tol = 1e-12;
  // command-specific
  std::string which;
  std::string pencil_path;
  std::string tuple_path;
  int trials = 100;
  int size = 0;
  int dim = 2;
  int cells = 64;
};

// ---------------------------------------------------------------------------
// Tables

using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v, int digits) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, digits);
  return std::string(buf.data(), res.ptr);
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string csv_cell(const Cell& c, int digits) {
  struct Visitor {
    int digits;
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v, digits); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{digits}, c);
}

std::string json_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "null"; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return std::isfinite(v) ? format_double(v, 17) : "null"; }
    std::string operator()(const std::string& v) const { return '"' + json_escape(v) + '"'; }
  };
  return std::visit(Visitor{}, c);
}

// CSV uses `digits` significant digits; JSON always carries 17.
void write_table(const Table& t, Format format, int digits, std::ostream& os) {
  if (format == Format::csv) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i], digits);
      os << '\n';
    }
    return;
  }
  os << "[\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << "  {";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
      os << (i ? ", " : "") << '"' << t.columns[i] << "\": " << json_cell(t.rows[r][i]);
    os << '}' << (r + 1 < t.rows.size() ? "," : "") << '\n';
  }
  os << "]\n";
}

// ---------------------------------------------------------------------------
// Reference tables

Table theta_table(int d_max) {
  if (d_max < 1) throw DomainError("--d-max must be >= 1");
  Table t{{"d", "theta_minus", "theta", "theta_plus", "theta_plusplus"}, {}};
  for (int d = 1; d <= d_max; ++d) {
    const auto rep = theta::theta(d);
    std::vector<Cell> row{static_cast<long long>(d), std::monostate{}, rep.theta, std::monostate{},
                          std::monostate{}};
    if (rep.bounds_odd) {
      row[1] = rep.bounds_odd->theta_minus;
      row[3] = rep.bounds_odd->theta_plus;
      row[4] = rep.bounds_odd->theta_plusplus;
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table median_table() {
  static constexpr std::array<std::array<double, 2>, 6> kShapes = {
      {{2.5, 1.0}, {3.0, 1.0}, {3.0, 2.0}, {4.0, 2.0}, {10.0, 3.0}, {10.0, 7.0}}};
  Table t{{"s", "t", "mean", "median", "mean_plus_half_gap", "mean_plus_gap", "old_upper"}, {}};
  for (const auto& [s, tt] : kShapes) {
    const betastats::BetaShape shape(s, tt);
    const auto bounds = betastats::median_bounds(shape);
    const double gap = (s - tt) / ((s + tt) * (s + tt));
    t.rows.push_back({s, tt, bounds.lower, betastats::median(shape), bounds.lower + 0.5 * gap, bounds.upper,
                      (s - 1.0) / (s + tt - 2.0)});
  }
  return t;
}

Table equipoint_table() {
  Table t{{"s", "t", "equipoint"}, {}};
  for (int s = 1; s <= 10; ++s)
    t.rows.push_back({static_cast<long long>(s), static_cast<long long>(10 - s),
                      betastats::equipoint(betastats::BetaShape(s, 10 - s))});
  return t;
}

// ---------------------------------------------------------------------------
// Verification sweeps

struct Check {
  explicit Check(std::string n = {}) : name(std::move(n)) {}

  std::string name;
  long long cases = 0;
  long long violations = 0;
  double worst = -std::numeric_limits<double>::infinity(); // largest excess seen
  std::vector<std::string> details;

  // excess > tol is a violation
  void record(double excess, double tol, const std::string& params) {
    ++cases;
    worst = std::max(worst, excess);
    if (excess > tol) {
      ++violations;
      if (details.size() < 20) details.push_back(params + " excess=" + format_double(excess, 6));
    }
  }
  void merge(const Check& o) {
    cases += o.cases;
    violations += o.violations;
    worst = std::max(worst, o.worst);
    for (const auto& d : o.details)
      if (details.size() < 20) details.push_back(d);
  }
};

std::string params(std::initializer_list<std::pair<const char*, double>> kv) {
  std::string s;
  for (const auto& [k, v] : kv) s += std::string(s.empty() ? "" : " ") + k + "=" + format_double(v, 10);
  return s;
}

// Runs body(i, local_checks) in parallel and merges the per-index checks in order.
std::vector<Check> sweep(std::size_t n, const std::vector<std::string>& names,
                         const std::function<void(std::size_t, std::vector<Check>&)>& body) {
  std::vector<std::vector<Check>> parts(n);
  parallel::parallel_for(n, [&](std::size_t i) {
    parts[i].resize(names.size());
    body(i, parts[i]);
  });
  std::vector<Check> out(names.size());
  for (std::size_t k = 0; k < names.size(); ++k) out[k].name = names[k];
  for (const auto& p : parts)
    for (std::size_t k = 0; k < names.size(); ++k) out[k].merge(p[k]);
  return out;
}

std::vector<Check> verify_simmons(int d_max, double tol) {
  if (d_max < 2) throw DomainError("verify simmons needs --d-max >= 2");
  return sweep(static_cast<std::size_t>(d_max - 1), {"simmons_upper", "equipoint_lower"},
               [&](std::size_t i, std::vector<Check>& c) {
                 const int d = static_cast<int>(i) + 2;
                 for (int s = (d + 1) / 2; s < d; ++s) {
                   const int t = d - s;
                   const double e = betastats::equipoint(betastats::BetaShape(0.5 * s, 0.5 * t));
                   const std::string p = params({{"s", s}, {"t", t}});
                   c[0].record(e - static_cast<double>(s) / d, tol, p);
                   c[1].record((0.5 * s + 1.0) / (0.5 * d + 2.0) - e, tol, p);
                 }
               });
}

std::vector<Check> verify_monotone(int d_max, double step, double tol) {
  if (d_max < 1 || !(step > 0.0)) throw DomainError("verify monotone needs --d-max >= 1 and --grid-step > 0");
  const auto n_real = static_cast<std::size_t>(std::floor(d_max / step + 1e-9));
  auto hat = sweep(n_real, {"phi_hat_one_step"}, [&](std::size_t i, std::vector<Check>& c) {
    const double d = (static_cast<double>(i) + 1.0) * step;
    for (double s = 0.5 * d; s < d - 1.0; s += step) {
      const double lo = betastats::phi_functions(s, d).phi_hat;
      const double hi = betastats::phi_functions(s + 1.0, d).phi_hat;
      c[0].record(lo - hi, tol, params({{"s", s}, {"d", d}}));
    }
  });
  const auto n_half = static_cast<std::size_t>(2 * d_max);
  auto phi = sweep(n_half, {"phi_one_step"}, [&](std::size_t i, std::vector<Check>& c) {
    const double d = 0.5 * (static_cast<double>(i) + 1.0);
    const double s0 = 0.5 * std::ceil(d); // smallest half-integer >= d/2
    std::vector<double> values;
    for (double s = s0; s < d; s += 0.5) values.push_back(betastats::phi_functions(s, d).phi);
    for (std::size_t k = 0; k + 2 < values.size() + 0 && s0 + 0.5 * static_cast<double>(k) < d - 1.0; ++k)
      c[0].record(values[k] - values[k + 2], tol, params({{"s", s0 + 0.5 * static_cast<double>(k)}, {"d", d}}));
  });
  hat.insert(hat.end(), phi.begin(), phi.end());
  return hat;
}

bool is_half_integer(double x) { return std::fabs(2.0 * x - std::round(2.0 * x)) < 1e-12; }

std::vector<Check> verify_bounds(int d_max, double step, double tol) {
  if (d_max < 2 || !(step > 0.0)) throw DomainError("verify bounds needs --d-max >= 2 and --grid-step > 0");
  const auto n = static_cast<std::size_t>(std::floor(d_max / step + 1e-9));
  return sweep(n,
               {"median_sandwich", "equipoint_le_median", "shifted_median_le_equipoint", "equipoint_lower",
                "equipoint_upper_half_integer"},
               [&](std::size_t i, std::vector<Check>& c) {
                 const double tt = (static_cast<double>(i) + 1.0) * step;
                 for (double s = tt; s + tt <= d_max + 1e-9; s += step) {
                   const betastats::BetaShape shape(s, tt);
                   const double e = betastats::equipoint(shape);
                   const double m = betastats::median(shape);
                   const std::string p = params({{"s", s}, {"t", tt}});
                   if (tt >= 1.0 && s + tt >= 3.0) {
                     const auto b = betastats::median_bounds(shape);
                     c[0].record(std::max(b.lower - m, m - b.upper), tol, p);
                   }
                   c[1].record(e - m, tol, p);
                   if (tt < s)
                     c[2].record(betastats::median(betastats::BetaShape(s + 1.0, tt + 1.0)) - e, tol, p);
                   const auto eb = betastats::equipoint_bounds(shape);
                   c[3].record(eb.lower - e, tol, p);
                   if (is_half_integer(s) && is_half_integer(tt)) c[4].record(e - eb.upper, tol, p);
                 }
               });
}

struct OracleRow {
  int s;
  int t;
  double closed;
  sphere_oracle::McEstimate mc;
};

std::vector<OracleRow> oracle_rows(std::uint64_t samples, std::uint64_t seed) {
  static constexpr std::array<std::array<int, 2>, 5> kPairs = {{{1, 1}, {2, 1}, {2, 2}, {3, 2}, {4, 4}}};
  std::vector<OracleRow> rows;
  for (const auto& [s, t] : kPairs) {
    const auto ks = theta::kappa_star(s, t);
    const theta::SignDiag J(s, t, ks.a_opt, ks.b_opt);
    rows.push_back({s, t, ks.kappa_star,
                    sphere_oracle::sphere_abs_quadratic_integral(sphere_oracle::to_matrix(J), samples, seed)});
  }
  return rows;
}

std::vector<Check> verify_oracle(std::uint64_t samples, std::uint64_t seed) {
  Check z{"kappa_within_3_sigma"};
  Check se{"std_err_below_2e-3"};
  for (const auto& r : oracle_rows(samples, seed)) {
    const std::string p = params({{"s", r.s}, {"t", r.t}, {"mc", r.mc.value}, {"closed", r.closed}});
    z.record(std::fabs(r.mc.value - r.closed) / r.mc.std_err - 3.0, 0.0, p);
    se.record(r.mc.std_err - 2e-3, 0.0, p);
  }
  return {z, se};
}

std::vector<Check> verify_dilation(std::uint64_t instances, std::uint64_t seed) {
  std::vector<Check> out{Check("spin2_dilation"), Check("blockdiag_dilation"), Check("spin_tensor_norm"),
                         Check("choi_psd")};
  for (std::uint64_t k = 0; k < instances; ++k) {
    CounterRng rng(seed, k);
    const int n = 1 + static_cast<int>(rng.next_u64() % 4);
    const Matrix x1 = linalg::random_symmetric(n, rng);
    const Matrix x2 = linalg::random_symmetric(n, rng);
    const pencil::SymTuple raw({x1, x2});
    const double radius = (k % 10 == 0) ? 1.0 : rng.uniform();
    const pencil::SymTuple X = raw.scaled(radius / linalg::sym_norm(dilation::spin2_lambda(raw)));
    const auto dil = dilation::spin2_dilation(X);
    const auto res = dilation::residuals(dil, X);
    const Matrix sq = dil.T[0] * dil.T[0] + dil.T[1] * dil.T[1] - Matrix::Identity(2 * n, 2 * n);
    const double worst = std::max({res.isometry, res.commutator, res.reconstruction, sq.cwiseAbs().maxCoeff()});
    out[0].record(worst, 1e-9, params({{"instance", static_cast<double>(k)}, {"n", n}}));

    const int g = 1 + static_cast<int>(rng.next_u64() % 4);
    std::vector<Matrix> mats;
    for (int j = 0; j < g; ++j) mats.push_back(linalg::random_symmetric(n, rng));
    const pencil::SymTuple Y(std::move(mats));
    const auto bd = dilation::blockdiag_dilation(Y);
    const auto bres = dilation::residuals(bd, Y);
    out[1].record(std::max({bres.isometry, bres.commutator, bres.reconstruction}), 1e-12,
                  params({{"instance", static_cast<double>(k)}, {"g", g}}));
  }
  for (int g = 2; g <= 6; ++g) {
    out[2].record(std::fabs(dilation::spin_tensor_norm(g) - g), 1e-10, params({{"g", g}}));
    out[3].record(-linalg::lambda_min(dilation::oh_to_spin_choi(g)), 1e-10, params({{"g", g}}));
  }
  return out;
}

Table checks_table(const std::vector<Check>& checks) {
  Table t{{"check", "cases", "violations", "worst_excess"}, {}};
  for (const auto& c : checks)
    t.rows.push_back({c.name, c.cases, c.violations, c.cases ? Cell{c.worst} : Cell{std::monostate{}}});
  return t;
}

// ---------------------------------------------------------------------------

struct Output {
  std::ofstream file;
  std::ostream* stream;

  Output(const std::string& path, std::ostream& fallback) : stream(&fallback) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw DomainError("cannot open output file " + path);
      stream = &file;
    }
  }
};

int run_verify(const RunConfig& cfg, bool d_set, bool step_set, bool samples_set, std::ostream& os,
               std::ostream& err) {
  std::vector<Check> checks;
  const std::string& which = cfg.which;
  if (which == "simmons") {
    checks = verify_simmons(d_set ? cfg.d_max : 400, cfg.tol);
  } else if (which == "monotone") {
    checks = verify_monotone(d_set ? cfg.d_max : 100, step_set ? cfg.grid_step : 0.25, cfg.tol);
  } else if (which == "bounds") {
    checks = verify_bounds(d_set ? cfg.d_max : 40, step_set ? cfg.grid_step : 0.5, cfg.tol);
  } else if (which == "oracle") {
    checks = verify_oracle(samples_set ? cfg.samples : sphere_oracle::kDefaultSamples, cfg.seed);
  } else if (which == "dilation") {
    checks = verify_dilation(samples_set ? cfg.samples : 1000, cfg.seed);
  } else if (which == "conjecture") {
    // Report-only: the real-parameter upper bound is not a theorem.
    const double step = step_set ? cfg.grid_step : 0.3;
    const auto found = betastats::real_simmons_scan(step, d_set ? cfg.d_max : 30);
    Table t{{"s", "t", "equipoint", "mean"}, {}};
    for (const auto& v : found) t.rows.push_back({v.s, v.t, v.equipoint, v.mean});
    write_table(t, cfg.format, 10, os);
    err << "conjecture scan: " << found.size() << " points with equipoint above the mean (report only)\n";
    return kExitOk;
  } else {
    throw DomainError("unknown verify target '" + which + "'");
  }
  write_table(checks_table(checks), cfg.format, 6, os);
  long long total = 0;
  for (const auto& c : checks) {
    total += c.violations;
    for (const auto& d : c.details) err << "violation " << c.name << ": " << d << '\n';
  }
  return total == 0 ? kExitOk : kExitViolation;
}

int run_witness(const RunConfig& cfg, std::ostream& os) {
  const auto w = pencil::sharpness_witness(cfg.dim, cfg.cells, static_cast<int>(cfg.samples), cfg.seed);
  if (cfg.format == Format::json) {
    nlohmann::json j{{"d", cfg.dim},
                     {"cells", cfg.cells},
                     {"samples_per_cell", cfg.samples},
                     {"lambda_max", w.lambda_max},
                     {"theta", w.theta},
                     {"e_functional", w.e_functional},
                     {"pencil", serialize::to_json(w.A)},
                     {"tuple", serialize::to_json(w.X)}};
    os << j.dump(2) << '\n';
    return kExitOk;
  }
  Table t{{"d", "cells", "samples_per_cell", "lambda_max", "theta", "ratio", "e_functional"}, {}};
  t.rows.push_back({static_cast<long long>(cfg.dim), static_cast<long long>(cfg.cells),
                    static_cast<long long>(cfg.samples), w.lambda_max, w.theta, w.lambda_max / w.theta,
                    w.e_functional});
  write_table(t, cfg.format, 10, os);
  return kExitOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matrix-cube relaxation constants, beta equipoints and dilation checks", "spectra-theta"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "csv";

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "write output to this file instead of stdout");
  };

  auto* theta_cmd = app.add_subcommand("theta-table", "theta(d) with its odd-d analytic bounds");
  theta_cmd->add_option("--d-max", cfg.d_max, "largest d")->default_val(20);
  add_common(theta_cmd);

  auto* median_cmd = app.add_subcommand("median-table", "Beta medians against their bounds");
  add_common(median_cmd);

  auto* equi_cmd = app.add_subcommand("equipoint-table", "equipoints e_{s,10-s}, s = 1..10");
  add_common(equi_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "run an invariant sweep; exit 2 on any violation");
  verify_cmd->add_option("which", cfg.which, "simmons|monotone|bounds|oracle|dilation|conjecture")->required();
  auto* d_opt = verify_cmd->add_option("--d-max", cfg.d_max, "sweep size");
  auto* step_opt = verify_cmd->add_option("--grid-step", cfg.grid_step, "shape grid spacing");
  auto* samples_opt = verify_cmd->add_option("--samples", cfg.samples, "Monte-Carlo samples / instances");
  verify_cmd->add_option("--seed", cfg.seed, "random seed");
  verify_cmd->add_option("--tol", cfg.tol, "slack allowed on inequalities");
  add_common(verify_cmd);

  auto* member_cmd = app.add_subcommand("membership", "lambda_min of L_A(X) for JSON pencil and tuple");
  member_cmd->add_option("--pencil", cfg.pencil_path)->required();
  member_cmd->add_option("--tuple", cfg.tuple_path)->required();
  member_cmd->add_option("--tol", cfg.tol)->default_val(pencil::kMembershipTol);
  add_common(member_cmd);

  auto* cube_cmd = app.add_subcommand("cube-test", "random check of the cube relaxation bound for a pencil");
  cube_cmd->add_option("--pencil", cfg.pencil_path)->required();
  cube_cmd->add_option("--trials", cfg.trials)->default_val(100);
  cube_cmd->add_option("--size", cfg.size, "size of the random contractions (0: pencil size)");
  cube_cmd->add_option("--seed", cfg.seed);
  cube_cmd->add_option("--tol", cfg.tol)->default_val(pencil::kMembershipTol);
  add_common(cube_cmd);

  auto* witness_cmd = app.add_subcommand("witness", "discretized pencil showing theta(d) is sharp");
  witness_cmd->add_option("--d", cfg.dim)->default_val(2);
  witness_cmd->add_option("--cells", cfg.cells)->default_val(64);
  witness_cmd->add_option("--samples", cfg.samples, "Haar samples per cell")->default_val(1000);
  witness_cmd->add_option("--seed", cfg.seed);
  add_common(witness_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and friends keep their zero status; every real usage error is a domain error.
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDomain;
  }
  cfg.format = format == "json" ? Format::json : Format::csv;

  try {
    Output sink(cfg.out, out);
    std::ostream& os = *sink.stream;
    if (theta_cmd->parsed()) {
      write_table(theta_table(cfg.d_max), cfg.format, 6, os);
    } else if (median_cmd->parsed()) {
      write_table(median_table(), cfg.format, 6, os);
    } else if (equi_cmd->parsed()) {
      write_table(equipoint_table(), cfg.format, 6, os);
    } else if (verify_cmd->parsed()) {
      return run_verify(cfg, d_opt->count() > 0, step_opt->count() > 0, samples_opt->count() > 0, os, err);
    } else if (member_cmd->parsed()) {
      const auto L = serialize::read_pencil_file(cfg.pencil_path);
      const auto X = serialize::read_tuple_file(cfg.tuple_path);
      const double margin = pencil::membership_margin(L, X);
      Table t{{"nu", "g", "n", "lambda_min", "member"}, {}};
      t.rows.push_back({static_cast<long long>(L.nu()), static_cast<long long>(L.g()),
                        static_cast<long long>(X.n()), margin,
                        std::string(margin >= -cfg.tol ? "true" : "false")});
      write_table(t, cfg.format, 17, os);
    } else if (cube_cmd->parsed()) {
      const auto B = serialize::read_pencil_file(cfg.pencil_path);
      const auto r = pencil::cube_relaxation_test(B, cfg.trials, cfg.seed, cfg.size, cfg.tol);
      Table t{{"nu", "g", "n", "trials", "theta_nu", "worst_margin", "required_scale", "tightest_scaling",
               "violations"},
              {}};
      t.rows.push_back({static_cast<long long>(r.nu), static_cast<long long>(r.g), static_cast<long long>(r.n),
                        static_cast<long long>(r.trials), r.theta_nu, r.worst_margin, r.required_scale,
                        r.tightest_scaling, static_cast<long long>(r.violations)});
      write_table(t, cfg.format, 10, os);
      return r.passed() ? kExitOk : kExitViolation;
    } else if (witness_cmd->parsed()) {
      return run_witness(cfg, os);
    }
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

} // namespace spectra::cli
