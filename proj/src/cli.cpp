#include "cyent/cli.hpp"

#include "cyent/cohomology.hpp"
#include "cyent/dynamics.hpp"
#include "cyent/entropy.hpp"
#include "cyent/errors.hpp"
#include "cyent/geometry.hpp"
#include "cyent/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace cyent::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv, Text };

struct CommandConfig {
  std::string subcommand;
  int dim = 3;
  std::optional<int> degree;
  std::string hilbert; // comma-separated coefficients, constant term first
  std::optional<double> t;
  std::string rhs;
  std::string s;
  std::string tol;
  double t_min = -2.0, t_max = 2.0;
  int steps = 101;
  int n_max = 200;
  int count = 10;
  std::string c_mode = "log";
  std::string format;
  std::string output;
  std::uint64_t seed = 20240611;
  std::vector<int> dims;
  double budget = 120.0;
};

Format parse_format(const std::string &f) {
  if (f == "json")
    return Format::Json;
  if (f == "csv")
    return Format::Csv;
  if (f == "text")
    return Format::Text;
  throw InvalidInput("unknown format '" + f + "'");
}

std::vector<std::string> split_commas(const std::string &s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    parts.push_back(item);
  return parts;
}

VarietySpec variety_from(const CommandConfig &cfg) {
  if (!cfg.hilbert.empty()) {
    std::vector<Rational> coeffs;
    for (const auto &p : split_commas(cfg.hilbert))
      coeffs.push_back(parse_rational(p));
    return make_variety(cfg.dim, std::nullopt, Polynomial(std::move(coeffs)));
  }
  return make_variety(cfg.dim, cfg.degree);
}

Rational tolerance_from(const CommandConfig &cfg) {
  if (cfg.tol.empty())
    return default_tolerance();
  const Rational tol = parse_rational(cfg.tol);
  if (sgn(tol) <= 0)
    throw InvalidInput("--tol must be positive");
  return tol;
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

Json rational_json(const Rational &q) {
  return Json{{"decimal", to_decimal_string(q)}, {"exact", to_fraction_string(q)}};
}

Json strings(const std::vector<Rational> &v) {
  Json arr = Json::array();
  for (const auto &q : v)
    arr.push_back(to_fraction_string(q));
  return arr;
}

Json integers(const std::vector<Integer> &v) {
  // Plain JSON numbers when they fit, strings otherwise.
  Json arr = Json::array();
  for (const auto &z : v) {
    if (z.fits_slong_p())
      arr.push_back(z.get_si());
    else
      arr.push_back(z.get_str());
  }
  return arr;
}

Json variety_header(const VarietySpec &X) {
  return Json{{"dim", X.dim}, {"degree", X.degree}};
}

// ---------------------------------------------------------------- commands

void cmd_variety(const CommandConfig &cfg, Format fmt, std::ostream &out) {
  const VarietySpec X = variety_from(cfg);
  const Polynomial P = hilbert_polynomial(X);
  std::vector<Integer> a;
  for (int k = 1; k <= cfg.count; ++k)
    a.push_back(euler_characteristic(X, k));

  if (fmt == Format::Csv) {
    out << "k,chi\n";
    for (int k = 0; k <= cfg.count; ++k)
      out << k << ',' << euler_characteristic(X, k).get_str() << '\n';
    return;
  }
  Json j;
  j["variety"] = variety_header(X);
  j["mode"] = X.is_builtin() ? "hypersurface" : "user-hilbert";
  j["calabi_yau"] = X.is_calabi_yau_hypersurface();
  j["top_intersection"] = X.top_intersection.get_str();
  j["hilbert_polynomial"] = strings({P.coefficients().begin(), P.coefficients().end()});
  j["chi_O"] = euler_characteristic(X, 0).get_str();
  j["a"] = integers(a);
  if (X.is_builtin()) {
    const CharacteristicClasses cc = characteristic_classes(X);
    j["chern"] = strings(cc.chern);
    j["todd"] = strings(cc.todd);
    j["sqrt_todd"] = strings(cc.sqrt_todd);
  }
  if (fmt == Format::Text) {
    out << "dim: " << X.dim << "\ndegree: " << X.degree << "\nmode: " << j["mode"].get<std::string>()
        << "\nhilbert polynomial: " << P.to_string('k') << "\nchi(O): " << j["chi_O"].get<std::string>()
        << "\na_1..a_" << cfg.count << ":";
    for (const auto &z : a)
      out << ' ' << z.get_str();
    out << '\n';
    return;
  }
  out << j.dump(2) << '\n';
}

Json result_json(const VarietySpec &X, const EntropyResult &r) {
  Json j;
  j["variety"] = variety_header(X);
  j["t"] = r.t;
  j["lambda"] = r.lambda;
  j["x"] = r.x;
  j["bracket"] = {to_decimal_string(r.bracket.lo), to_decimal_string(r.bracket.hi)};
  j["bracket_exact"] = {to_fraction_string(r.bracket.lo), to_fraction_string(r.bracket.hi)};
  j["residual"] = r.residual;
  j["iterations"] = r.iterations;
  j["rhs"] = rational_json(r.rhs);
  j["certified_rhs"] = r.certified_rhs;
  return j;
}

constexpr const char *kResultCsvHeader = "t,lambda,x,residual,bracket_lo,bracket_hi";

std::string result_csv(const EntropyResult &r) {
  return fmt_double(r.t) + ',' + fmt_double(r.lambda) + ',' + fmt_double(r.x) + ',' +
         fmt_double(r.residual) + ',' + to_decimal_string(r.bracket.lo) + ',' +
         to_decimal_string(r.bracket.hi);
}

void cmd_solve(const CommandConfig &cfg, Format fmt, std::ostream &out) {
  const VarietySpec X = variety_from(cfg);
  const Rational tol = tolerance_from(cfg);
  const EntropySolver solver(X);
  EntropyResult r;
  if (!cfg.rhs.empty())
    r = solver.solve_rhs(parse_rational(cfg.rhs), tol);
  else
    r = solver.solve(cfg.t.value_or(0.0), tol);

  if (fmt == Format::Csv) {
    out << kResultCsvHeader << '\n' << result_csv(r) << '\n';
  } else if (fmt == Format::Text) {
    out << "h_t = " << fmt_double(r.lambda) << "  (t = " << fmt_double(r.t) << ", d = " << X.dim
        << ")\nx = e^-lambda in [" << to_decimal_string(r.bracket.lo) << ", "
        << to_decimal_string(r.bracket.hi) << "]\n";
  } else {
    out << result_json(X, r).dump(2) << '\n';
  }
}

void cmd_sweep(const CommandConfig &cfg, Format fmt, std::ostream &out) {
  const VarietySpec X = variety_from(cfg);
  const auto rows = sweep(X, cfg.t_min, cfg.t_max, cfg.steps, tolerance_from(cfg));
  if (fmt == Format::Json) {
    Json j;
    j["variety"] = variety_header(X);
    Json arr = Json::array();
    for (const auto &row : rows) {
      Json e = result_json(X, row.result);
      e.erase("variety");
      e["curve_residual"] = row.curve_residual;
      arr.push_back(std::move(e));
    }
    j["rows"] = std::move(arr);
    out << j.dump(2) << '\n';
    return;
  }
  out << kResultCsvHeader << ",curve_residual\n";
  for (const auto &row : rows)
    out << result_csv(row.result) << ',' << fmt_double(row.curve_residual) << '\n';
}

void cmd_curve(const CommandConfig &cfg, Format fmt, std::ostream &out) {
  const VarietySpec X = variety_from(cfg);
  const CurvePolynomial F = entropy_curve(X);
  if (fmt == Format::Text) {
    out << "F(u, y) = " << F.to_string() << '\n';
    return;
  }
  if (fmt == Format::Csv) {
    out << "u_power,y_power,coefficient\n";
    for (std::size_t i = 0; i < F.coeffs.size(); ++i)
      for (std::size_t j = 0; j < F.coeffs[i].size(); ++j)
        if (F.coeffs[i][j] != 0)
          out << i << ',' << j << ',' << F.coeffs[i][j].get_str() << '\n';
    return;
  }
  Json j;
  j["variety"] = variety_header(X);
  j["polynomial"] = F.to_string();
  Json terms = Json::array();
  for (std::size_t i = 0; i < F.coeffs.size(); ++i)
    for (std::size_t k = 0; k < F.coeffs[i].size(); ++k)
      if (F.coeffs[i][k] != 0)
        terms.push_back(Json{{"u", i}, {"y", k}, {"coeff", F.coeffs[i][k].get_str()}});
  j["terms"] = std::move(terms);
  const Polynomial at1 = F.at_u(1);
  j["at_u_1"] = at1.to_string('y');
  const auto [quot, rem] = Polynomial::divmod(at1, Polynomial{-1, 1});
  if (rem.is_zero())
    j["at_u_1_over_y_minus_1"] = quot.to_string('y');
  out << j.dump(2) << '\n';
}

void cmd_dynamics(const CommandConfig &cfg, Format fmt, std::ostream &out) {
  const VarietySpec X = variety_from(cfg);
  if (!cfg.s.empty() && cfg.t)
    throw InvalidInput("--s and --t are mutually exclusive");
  const SParam s = !cfg.s.empty() ? SParam(parse_rational(cfg.s))
                                  : SParam::from_t(cfg.t.value_or(0.0), X.dim);
  CMode mode;
  if (cfg.c_mode == "exact")
    mode = CMode::Exact;
  else if (cfg.c_mode == "log")
    mode = CMode::LogSpace;
  else
    throw InvalidInput("--mode must be exact or log");
  const GrowthTable g = c_sequence(X, s, cfg.n_max, mode);

  if (fmt == Format::Csv) {
    out << "n,log_C,lambda_ratio,lambda_cesaro\n";
    for (std::size_t n = 0; n < g.log_C.size(); ++n) {
      out << n << ',' << fmt_double(g.log_C[n]) << ',';
      if (n > 0)
        out << fmt_double(g.lambda_ratio[n - 1]) << ',' << fmt_double(g.lambda_cesaro[n - 1]);
      else
        out << ',';
      out << '\n';
    }
    return;
  }
  Json j;
  j["variety"] = variety_header(X);
  j["s"] = rational_json(s.value);
  j["n_max"] = cfg.n_max;
  j["mode"] = cfg.c_mode;
  if (g.log_C.size() >= 10) {
    const GrowthEstimate est = growth_estimate(g);
    j["lambda_hat"] = est.lambda_hat;
    j["lambda_cesaro"] = est.lambda_cesaro;
    j["tail_oscillation"] = est.tail_oscillation;
  }
  j["log_C"] = g.log_C;
  if (fmt == Format::Text) {
    out << "n_max = " << cfg.n_max << "\nlambda_hat = "
        << (j.contains("lambda_hat") ? fmt_double(j["lambda_hat"].get<double>()) : "n/a") << '\n';
    return;
  }
  out << j.dump(2) << '\n';
}

Json matrix_json(const RationalMatrix &M) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < M.size(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < M.size(); ++k)
      row.push_back(to_fraction_string(M(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

void cmd_cohomology(const CommandConfig &cfg, Format fmt, std::ostream &out) {
  const VarietySpec X = variety_from(cfg);
  const PhiAction act = phi_action_matrix(X);
  const CounterexampleReport rep = counterexample_report(X);
  Json j;
  j["dim"] = X.dim;
  j["char_poly"] = integers(rep.char_poly);
  j["rho"] = rep.rho;
  j["quasi_unipotent"] = rep.quasi_unipotent;
  j["h0"] = rep.h0;
  j["log_rho"] = rep.log_rho_full;
  j["kt_holds"] = rep.kt_holds;
  if (fmt == Format::Text) {
    out << "char poly (ascending): " << j["char_poly"].dump() << "\nrho = " << fmt_double(rep.rho)
        << "\nquasi-unipotent: " << (rep.quasi_unipotent ? "yes" : "no") << '\n';
    return;
  }
  j["twist"] = matrix_json(act.twist.matrix);
  j["tensor"] = matrix_json(act.tensor.matrix);
  j["phi"] = matrix_json(act.phi.matrix);
  out << j.dump(2) << '\n';
}

void cmd_counterexample(const CommandConfig &cfg, Format fmt, std::ostream &out) {
  const VarietySpec X = variety_from(cfg);
  const CounterexampleReport rep = counterexample_report(X);
  if (fmt == Format::Text) {
    out << "d = " << rep.dim << ": h_0 = " << fmt_double(rep.h0)
        << ", log rho = " << fmt_double(rep.log_rho_full) << " -> conjecture "
        << (rep.kt_holds ? "holds" : "fails") << '\n'
        << rep.detail << '\n';
    return;
  }
  Json j;
  j["dim"] = rep.dim;
  j["h0"] = rep.h0;
  j["rho"] = rep.rho;
  j["log_rho_full"] = rep.log_rho_full;
  j["kt_holds"] = rep.kt_holds;
  j["quasi_unipotent"] = rep.quasi_unipotent;
  j["char_poly"] = integers(rep.char_poly);
  j["detail"] = rep.detail;
  out << j.dump(2) << '\n';
}

int cmd_verify(const CommandConfig &cfg, Format fmt, std::ostream &out) {
  VerifyOptions opts;
  opts.dims = cfg.dims;
  opts.budget_seconds = cfg.budget;
  opts.seed = cfg.seed;
  const VerifyReport rep = verify_suite(opts);
  if (fmt == Format::Json) {
    out << rep.to_json().dump(2) << '\n';
  } else {
    for (const auto &c : rep.checks) {
      const char *status = c.status == CheckStatus::Pass   ? "PASS"
                           : c.status == CheckStatus::Fail ? "FAIL"
                                                           : "SKIP";
      out << status << ' ' << c.name << " d=" << c.dim;
      if (!c.detail.empty())
        out << "  " << c.detail;
      out << '\n';
    }
  }
  if (rep.count(CheckStatus::Fail) > 0)
    return kInvariantViolation;
  if (rep.budget_exceeded())
    return kNonConvergence;
  return kOk;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CommandConfig cfg;
  CLI::App app{"Categorical entropy of T_O o (-(x)O(-1)) on Calabi-Yau hypersurfaces",
               "cy-entropy"};
  app.require_subcommand(1, 1);

  auto add_variety = [&](CLI::App *sub) {
    sub->add_option("--dim,-d", cfg.dim, "dimension d >= 3")->required();
    auto *deg = sub->add_option("--degree", cfg.degree, "hypersurface degree (default d+2)");
    sub->add_option("--hilbert", cfg.hilbert,
                    "Hilbert polynomial coefficients, constant term first, e.g. 0,5/3,0,5/6")
        ->excludes(deg);
  };
  auto add_output = [&](CLI::App *sub) {
    sub->add_option("--format,-f", cfg.format, "json | csv | text (csv for sweep and dynamics)");
    sub->add_option("--output,-o", cfg.output, "write the report here instead of stdout");
  };

  auto *variety = app.add_subcommand("variety", "numerical invariants of X");
  add_variety(variety);
  variety->add_option("--count", cfg.count, "number of a_k values")->check(CLI::Range(1, 100000));

  auto *solve = app.add_subcommand("solve", "solve for h_t");
  add_variety(solve);
  auto *t_opt = solve->add_option("--t", cfg.t, "t (default 0)");
  solve->add_option("--rhs", cfg.rhs, "exact e^{(d-1)t} as p/q")->excludes(t_opt);
  solve->add_option("--tol", cfg.tol, "bracket width on x = e^-lambda, as p/q");

  auto *sweep_cmd = app.add_subcommand("sweep", "h_t over a grid of t");
  add_variety(sweep_cmd);
  sweep_cmd->add_option("--t-min", cfg.t_min)->capture_default_str();
  sweep_cmd->add_option("--t-max", cfg.t_max)->capture_default_str();
  sweep_cmd->add_option("--steps", cfg.steps)->capture_default_str();
  sweep_cmd->add_option("--tol", cfg.tol, "bracket width on x, as p/q");

  auto *curve = app.add_subcommand("curve", "algebraic curve F(e^t, e^h) = 0");
  add_variety(curve);

  auto *dynamics = app.add_subcommand("dynamics", "growth of the C_n recursion");
  add_variety(dynamics);
  dynamics->add_option("--t", cfg.t, "t, giving s = e^{-(d-1)t}");
  dynamics->add_option("--s", cfg.s, "s as p/q");
  dynamics->add_option("--n-max", cfg.n_max)->capture_default_str();
  dynamics->add_option("--mode", cfg.c_mode, "exact | log")->capture_default_str();

  auto *cohomology = app.add_subcommand("cohomology", "cohomological action and spectrum");
  add_variety(cohomology);

  auto *counter = app.add_subcommand("counterexample", "compare h_0 with log rho");
  add_variety(counter);

  auto *verify = app.add_subcommand("verify", "run every cross-check");
  verify->add_option("--dims", cfg.dims, "dimensions in 3..8")->delimiter(',');
  verify->add_option("--budget", cfg.budget, "seconds")->capture_default_str();
  verify->add_option("--seed", cfg.seed)->capture_default_str();

  for (auto *sub : {variety, solve, sweep_cmd, curve, dynamics, cohomology, counter, verify})
    add_output(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  CLI::App *chosen = app.get_subcommands().front();
  cfg.subcommand = chosen->get_name();
  if (cfg.format.empty())
    cfg.format = (chosen == sweep_cmd || chosen == dynamics) ? "csv" : "json";

  try {
    const Format fmt = parse_format(cfg.format);
    std::ofstream file;
    if (!cfg.output.empty()) {
      file.open(cfg.output, std::ios::binary | std::ios::trunc);
      if (!file)
        throw InvalidInput("cannot open output file '" + cfg.output + "'");
    }
    std::ostream &dest = cfg.output.empty() ? out : file;

    int code = kOk;
    if (chosen == variety)
      cmd_variety(cfg, fmt, dest);
    else if (chosen == solve)
      cmd_solve(cfg, fmt, dest);
    else if (chosen == sweep_cmd)
      cmd_sweep(cfg, fmt, dest);
    else if (chosen == curve)
      cmd_curve(cfg, fmt, dest);
    else if (chosen == dynamics)
      cmd_dynamics(cfg, fmt, dest);
    else if (chosen == cohomology)
      cmd_cohomology(cfg, fmt, dest);
    else if (chosen == counter)
      cmd_counterexample(cfg, fmt, dest);
    else
      code = cmd_verify(cfg, fmt, dest);
    dest.flush();
    return code;
  } catch (const InvalidInput &e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const NonConvergence &e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const InvariantViolation &e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << '\n';
    return kInvariantViolation;
  }
}

} // namespace cyent::cli
