#include "cyent/verify.hpp"

#include "cyent/cohomology.hpp"
#include "cyent/dynamics.hpp"
#include "cyent/entropy.hpp"
#include "cyent/errors.hpp"
#include "cyent/geometry.hpp"
#include "cyent/parallel.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace cyent {

namespace {

// Check body: returns an empty string on success, failure detail otherwise.
using CheckFn = std::function<std::string(const VarietySpec &, std::mt19937_64 &)>;

struct CheckDef {
  std::string name;
  CheckFn fn;
  bool (*applies)(int dim) = nullptr;
};

double unit_uniform(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Rational random_rational(std::mt19937_64 &rng) {
  const long num = static_cast<long>(rng() % 41) - 20;
  const long den = static_cast<long>(rng() % 12) + 1;
  return ratio(num, den);
}

Polynomial random_polynomial(std::mt19937_64 &rng, int max_deg) {
  std::vector<Rational> c(static_cast<std::size_t>(rng() % static_cast<unsigned>(max_deg + 1)) + 1);
  for (auto &q : c)
    q = random_rational(rng);
  return Polynomial(std::move(c));
}

RationalFunction random_ratfun(std::mt19937_64 &rng) {
  Polynomial den;
  while (den.is_zero())
    den = random_polynomial(rng, 3);
  return RationalFunction(random_polynomial(rng, 3), den);
}

RationalFunction cy_series_formula(int d) {
  const unsigned n = static_cast<unsigned>(d + 2);
  const Polynomial one_minus_x{1, -1};
  const RationalFunction main(Polynomial::constant(1) - Polynomial::monomial(1, n),
                              one_minus_x.pow(n));
  return main - RationalFunction(Polynomial::constant(1));
}

std::string fail(const std::string &what) { return what; }

// ------------------------------------------------------------ the checks

std::string check_numerics(const VarietySpec &, std::mt19937_64 &rng) {
  for (long m = -50; m <= 50; ++m)
    for (unsigned r = 0; r <= 12; ++r) {
      Rational prod = 1;
      for (unsigned j = 0; j < r; ++j)
        prod *= Rational(m - static_cast<long>(j)) / Rational(static_cast<long>(j + 1));
      if (generalized_binomial(m, r) != prod)
        return fail("binomial mismatch at m=" + std::to_string(m) + " r=" + std::to_string(r));
    }
  for (int trial = 0; trial < 40; ++trial) {
    const RationalFunction a = random_ratfun(rng), b = random_ratfun(rng), c = random_ratfun(rng);
    if ((a + b) + c != a + (b + c) || a * b != b * a || (a * b) * c != a * (b * c))
      return fail("rational function algebra failed on " + a.to_string() + ", " + b.to_string() +
                  ", " + c.to_string());
    if (RationalFunction(a.num(), a.den()) != a)
      return fail("reduction not idempotent on " + a.to_string());
  }
  return {};
}

std::string check_chi_dual(const VarietySpec &X, std::mt19937_64 &) {
  const CharacteristicClasses cc = characteristic_classes(X);
  for (long k = -10; k <= 100; ++k) {
    const Integer binom = euler_characteristic(X, k);
    const Rational hrr = hrr_euler_characteristic(X, cc, k);
    if (Rational(binom) != hrr)
      return fail("k=" + std::to_string(k) + " binomial=" + binom.get_str() +
                  " hrr=" + hrr.get_str());
  }
  return {};
}

std::string check_hilbert_polynomial(const VarietySpec &X, std::mt19937_64 &) {
  const Polynomial P = hilbert_polynomial(X);
  for (long k = -100; k < 100; ++k)
    if (P(Rational(k)) != Rational(euler_characteristic(X, k)))
      return fail("P(" + std::to_string(k) + ") != chi");
  return {};
}

std::string check_chi_shape(const VarietySpec &X, std::mt19937_64 &) {
  const Integer chi0 = euler_characteristic(X, 0);
  const Integer expect = (X.dim % 2 == 0) ? 2 : 0;
  if (chi0 != expect)
    return fail("chi(O_X) = " + chi0.get_str());
  Integer prev = 0;
  for (long k = 1; k <= 200; ++k) {
    const Integer a = euler_characteristic(X, k);
    if (a < 1 || a <= prev)
      return fail("a_k not increasing at k=" + std::to_string(k));
    prev = a;
  }
  return {};
}

std::string check_series(const VarietySpec &X, std::mt19937_64 &) {
  const RationalFunction S = hilbert_series_closed_form(X);
  if (S != cy_series_formula(X.dim))
    return fail("closed form " + S.to_string() + " differs from (1-x^n)/(1-x)^n - 1");
  const std::vector<Rational> c = S.series(200);
  if (sgn(c[0]) != 0)
    return fail("S(0) != 0");
  for (long k = 1; k <= 200; ++k)
    if (c[static_cast<std::size_t>(k)] != Rational(euler_characteristic(X, k)))
      return fail("series coefficient mismatch at k=" + std::to_string(k));
  return {};
}

std::string check_solve_random(const VarietySpec &X, std::mt19937_64 &rng) {
  const EntropySolver solver(X);
  const Rational tol = default_tolerance();
  for (int i = 0; i < 100; ++i) {
    const double t = -5.0 + 10.0 * unit_uniform(rng);
    const EntropyResult r = solver.solve(t, tol);
    const int slo = sgn(solver.series()(r.bracket.lo) - r.rhs);
    const int shi = sgn(solver.series()(r.bracket.hi) - r.rhs);
    if (!(r.lambda > 0.0) || slo >= 0 || shi < 0 || r.bracket.width() > tol) {
      std::ostringstream os;
      os.precision(17);
      os << "t=" << t << " lambda=" << r.lambda << " signs=" << slo << "," << shi;
      return fail(os.str());
    }
  }
  return {};
}

std::string check_sweep(const VarietySpec &X, std::mt19937_64 &) {
  const auto rows = sweep_serial(X, -2.0, 2.0, 101, default_tolerance());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::ostringstream os;
    os.precision(17);
    if (rows[i].curve_residual > 1e-8) {
      os << "curve residual " << rows[i].curve_residual << " at t=" << rows[i].result.t;
      return fail(os.str());
    }
    if (i > 0 && !(rows[i].result.lambda < rows[i - 1].result.lambda)) {
      os << "lambda not decreasing at t=" << rows[i].result.t;
      return fail(os.str());
    }
  }
  return {};
}

std::string check_recursion(const VarietySpec &X, std::mt19937_64 &) {
  for (const Rational &sv : {Rational(1), Rational(3, 7)}) {
    const SParam s(sv);
    const EvaluatedBTable B = b_table(X, 100, 1, s);
    const GrowthTable C = c_sequence(X, s, 100, CMode::Exact);
    for (int n = 0; n <= 100; ++n)
      if (C.exact[static_cast<std::size_t>(n)] != sv * B.at(n, 1))
        return fail("C_n != s B_{n,1} at n=" + std::to_string(n) + " s=" + sv.get_str());
  }
  return {};
}

std::string check_compositions(const VarietySpec &X, std::mt19937_64 &) {
  for (const Rational &sv : {Rational(1), Rational(3, 7)}) {
    const SParam s(sv);
    const GrowthTable C = c_sequence(X, s, 14, CMode::Exact);
    for (int n = 0; n <= 14; ++n)
      if (composition_oracle(X, s, n) != C.exact[static_cast<std::size_t>(n)])
        return fail("composition oracle mismatch at n=" + std::to_string(n) + " s=" + sv.get_str());
  }
  return {};
}

std::string check_partition(const VarietySpec &X, std::mt19937_64 &) {
  const SymbolicBTable B = b_table(X, 12, 5);
  for (int n = 0; n <= 12; ++n)
    for (int k = 1; k <= 5; ++k)
      if (partition_formula(X, n, k) != B.at(n, k))
        return fail("partition formula mismatch at n=" + std::to_string(n) +
                    " k=" + std::to_string(k));
  return {};
}

std::string check_sandwich(const VarietySpec &X, std::mt19937_64 &) {
  for (const Rational &sv : {Rational(1), Rational(3, 7), Rational(2)}) {
    const EvaluatedBTable B = b_table(X, 30, 6, SParam(sv));
    for (int n = 0; n + 5 <= 30; ++n)
      for (int k = 1; k <= 5; ++k)
        if (!(B.at(n, 1) <= B.at(n, k + 1) && B.at(n, k + 1) <= B.at(n + k, 1)))
          return fail("sandwich fails at n=" + std::to_string(n) + " k=" + std::to_string(k) +
                      " s=" + sv.get_str());
  }
  return {};
}

std::string check_lower_bound(const VarietySpec &X, std::mt19937_64 &) {
  // C_n >= a'_r (a'_k)^q for n + 1 = qk + r (the composition k, ..., k, r).
  const SParam s(Rational(1, 100));
  const int n_max = 120;
  const GrowthTable C = c_sequence(X, s, n_max, CMode::Exact);
  const std::vector<Integer> a = hilbert_values(X, n_max + 1);
  bool tested = false;
  for (int k = 1; k <= 20; ++k) {
    const Rational ak = Rational(a[static_cast<std::size_t>(k - 1)]) * s.value;
    if (ak <= 1)
      continue;
    tested = true;
    for (int n = 0; n <= n_max; ++n) {
      const int q = (n + 1) / k, r = (n + 1) % k;
      Rational bound = 1;
      for (int i = 0; i < q; ++i)
        bound *= ak;
      if (r > 0)
        bound *= Rational(a[static_cast<std::size_t>(r - 1)]) * s.value;
      if (C.exact[static_cast<std::size_t>(n)] < bound)
        return fail("lower bound fails at n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  }
  return tested ? std::string{} : fail("no k <= 20 with a'_k > 1 at s = 1/100");
}

std::string check_growth(const VarietySpec &X, std::mt19937_64 &) {
  const double lambda = EntropySolver(X).solve(0.0, default_tolerance()).lambda;
  const GrowthTable g = c_sequence(X, SParam(1), 2000, CMode::LogSpace);
  const GrowthEstimate est = growth_estimate(g);
  if (std::fabs(est.lambda_hat - lambda) > 1e-6) {
    std::ostringstream os;
    os.precision(17);
    os << "ratio estimate " << est.lambda_hat << " vs solver " << lambda;
    return fail(os.str());
  }
  return {};
}

std::string check_pairing(const VarietySpec &X, std::mt19937_64 &) {
  std::vector<CohClass> v;
  for (long a = -10; a <= 10; ++a)
    v.push_back(mukai_vector(X, a));
  for (long a = -10; a <= 10; ++a)
    for (long b = -10; b <= 10; ++b)
      if (mukai_pairing(X, v[static_cast<std::size_t>(a + 10)], v[static_cast<std::size_t>(b + 10)]) !=
          Rational(euler_characteristic(X, b - a)))
        return fail("pairing != chi at a=" + std::to_string(a) + " b=" + std::to_string(b));
  return {};
}

std::string check_twist(const VarietySpec &X, std::mt19937_64 &) {
  const PhiAction act = phi_action_matrix(X);
  const auto n = static_cast<std::size_t>(X.dim + 1);
  const RationalMatrix &T = act.twist.matrix;
  const CohClass vO = mukai_vector(X, 0);
  CohClass expect = vO;
  if (X.dim % 2 == 0)
    for (auto &c : expect.coords)
      c = -c;
  if (T * vO != expect)
    return fail("twist v(O) != (-1)^{1-d} v(O)");
  const RationalMatrix I = RationalMatrix::identity(n);
  if (X.dim % 2 == 0) {
    if (!(T * T).is_identity())
      return fail("twist^2 != I");
    if (T.determinant() != -1)
      return fail("det twist != -1");
  } else {
    const RationalMatrix N = T - I;
    if (!(N * N == RationalMatrix(n)))
      return fail("(twist - I)^2 != 0");
    if (T.determinant() != 1)
      return fail("det twist != 1");
  }
  if (act.tensor.matrix.determinant() != 1)
    return fail("det tensor != 1");
  return {};
}

std::string check_even_counterexample(const VarietySpec &X, std::mt19937_64 &) {
  const PhiAction act = phi_action_matrix(X);
  if (!act.phi.matrix.pow(static_cast<unsigned>(X.dim + 2)).is_identity())
    return fail("phi^{d+2} != I");
  const CounterexampleReport rep = counterexample_report(X);
  if (rep.rho != 1.0 || !(rep.h0 > 0.0) || rep.kt_holds)
    return fail("expected rho = 1 < e^{h0} and kt_holds = false");
  return {};
}

std::string check_odd_equality(const VarietySpec &X, std::mt19937_64 &) {
  const CounterexampleReport rep = counterexample_report(X);
  std::ostringstream os;
  os.precision(17);
  if (std::fabs(std::log(rep.rho) - rep.h0) > kKtTolerance || !rep.kt_holds) {
    os << "log rho " << std::log(rep.rho) << " vs h0 " << rep.h0;
    return fail(os.str());
  }
  std::vector<Rational> cp(rep.char_poly.begin(), rep.char_poly.end());
  const Polynomial chi_poly(std::move(cp));
  const Polynomial F1 = entropy_curve(X).at_u(1);
  const auto [quot, rem] = Polynomial::divmod(F1, chi_poly);
  if (!rem.is_zero())
    return fail("char poly " + chi_poly.to_string('y') + " does not divide F(1,y)");
  return {};
}

bool all_dims(int) { return true; }
bool even_dims(int d) { return d % 2 == 0; }
bool odd_dims(int d) { return d % 2 == 1; }
bool small_dims(int d) { return d <= 5; }

const std::vector<CheckDef> &per_dim_checks() {
  static const std::vector<CheckDef> checks = {
      {"chi_dual_oracle", check_chi_dual, all_dims},
      {"hilbert_polynomial", check_hilbert_polynomial, all_dims},
      {"chi_increasing", check_chi_shape, all_dims},
      {"hilbert_series_closed_form", check_series, all_dims},
      {"solve_random_t", check_solve_random, all_dims},
      {"sweep_curve_monotone", check_sweep, all_dims},
      {"recursion_consistency", check_recursion, all_dims},
      {"composition_oracle", check_compositions, all_dims},
      {"partition_formula", check_partition, small_dims},
      {"sandwich", check_sandwich, all_dims},
      {"growth_lower_bound", check_lower_bound, all_dims},
      {"growth_rate", check_growth, all_dims},
      {"pairing_euler", check_pairing, all_dims},
      {"twist_action", check_twist, all_dims},
      {"even_counterexample", check_even_counterexample, even_dims},
      {"odd_equality", check_odd_equality, odd_dims},
  };
  return checks;
}

const char *status_name(CheckStatus s) {
  switch (s) {
  case CheckStatus::Pass:
    return "pass";
  case CheckStatus::Fail:
    return "fail";
  default:
    return "skipped";
  }
}

} // namespace

std::size_t VerifyReport::count(CheckStatus s) const {
  std::size_t n = 0;
  for (const auto &c : checks)
    n += c.status == s;
  return n;
}

nlohmann::ordered_json VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["dims"] = dims;
  j["passed"] = count(CheckStatus::Pass);
  j["failed"] = count(CheckStatus::Fail);
  j["skipped"] = count(CheckStatus::Skipped);
  j["complete"] = !budget_exceeded();
  auto &arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto &c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["dim"] = c.dim;
    e["status"] = status_name(c.status);
    if (!c.detail.empty())
      e["detail"] = c.detail;
    arr.push_back(std::move(e));
  }
  return j;
}

VerifyReport verify_suite(const VerifyOptions &options) {
  for (int d : options.dims)
    if (d < 3 || d > 8)
      throw InvalidInput("verify dims must lie in 3..8, got " + std::to_string(d));

  struct Task {
    const CheckDef *def;
    int dim;
    std::uint64_t seed;
  };
  static const CheckDef numerics_check{"numerics_properties", check_numerics, all_dims};

  VerifyReport report;
  report.seed = options.seed;
  report.dims = options.dims;
  std::vector<Task> tasks;
  if (!options.dims.empty())
    tasks.push_back({&numerics_check, 0, options.seed});
  for (int d : options.dims) {
    const auto &defs = per_dim_checks();
    for (std::size_t i = 0; i < defs.size(); ++i)
      if (defs[i].applies(d))
        tasks.push_back({&defs[i], d, options.seed ^ (static_cast<std::uint64_t>(d) << 32) ^ i});
  }
  report.checks.resize(tasks.size());

  const auto start = std::chrono::steady_clock::now();
  const auto budget = std::chrono::duration<double>(options.budget_seconds);

#pragma omp parallel for schedule(dynamic, 1) num_threads(configured_threads())
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const Task &task = tasks[i];
    CheckResult &res = report.checks[i];
    res.name = task.def->name;
    res.dim = task.dim;
    if (options.budget_seconds <= 0.0 || std::chrono::steady_clock::now() - start >= budget) {
      res.status = CheckStatus::Skipped;
      continue;
    }
    std::mt19937_64 rng(task.seed);
    try {
      const VarietySpec X = make_variety(task.dim == 0 ? 3 : task.dim);
      res.detail = task.def->fn(X, rng);
      res.status = res.detail.empty() ? CheckStatus::Pass : CheckStatus::Fail;
    } catch (const std::exception &e) {
      res.status = CheckStatus::Fail;
      res.detail = std::string("exception: ") + e.what();
    }
  }
  return report;
}

} // namespace cyent
