#include "cyent/entropy.hpp"

#include "cyent/errors.hpp"
#include "cyent/parallel.hpp"

#include <cmath>
#include <sstream>

namespace cyent {

namespace {

const Rational &bracket_epsilon() {
  static const Rational eps = ratio(1, Integer(1) << 20);
  return eps;
}

// Integer content-free, positive-leading rescaling of a rational vector.
std::vector<Integer> clear_denominators(const std::vector<Rational> &v) {
  Integer lcm = 1;
  for (const auto &q : v)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> out(v.size());
  Integer content = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Rational scaled = v[i] * Rational(lcm);
    out[i] = scaled.get_num();
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out[i].get_mpz_t());
  }
  if (content > 1)
    for (auto &z : out)
      z /= content;
  return out;
}

} // namespace

// ------------------------------------------------------------- the series

RationalFunction hilbert_series_closed_form(const VarietySpec &X) {
  const Polynomial P = hilbert_polynomial(X);
  const RationalFunction x_times{Polynomial::identity()};
  // E_m(x) = sum_{k>=1} k^m x^k, with E_0 = x/(1-x) and E_m = x E_{m-1}'.
  RationalFunction E(Polynomial::identity(), Polynomial{1, -1});
  RationalFunction S;
  for (std::size_t m = 0; m < P.coefficients().size(); ++m) {
    if (m > 0)
      E = x_times * E.derivative();
    const Rational &c = P.coefficients()[m];
    if (sgn(c) != 0)
      S = S + RationalFunction(Polynomial::constant(c)) * E;
  }
  return S;
}

Rational default_tolerance() {
  const Rational width = 1 - 2 * bracket_epsilon();
  return width * ratio(1, Integer(1) << 64);
}

// ------------------------------------------------------------- the solver

EntropySolver::EntropySolver(VarietySpec X)
    : X_(std::move(X)), S_(hilbert_series_closed_form(X_)) {}

EntropyResult EntropySolver::solve(double t, const Rational &tol) const {
  if (!std::isfinite(t))
    throw InvalidInput("t must be finite");
  const double rhs = std::exp(static_cast<double>(X_.dim - 1) * t);
  if (!std::isfinite(rhs) || rhs <= 0.0)
    throw InvalidInput("e^{(d-1)t} is not a positive finite double for t = " +
                       std::to_string(t));
  return solve_impl(t, Rational(rhs), false, tol);
}

EntropyResult EntropySolver::solve_rhs(const Rational &rhs, const Rational &tol) const {
  if (sgn(rhs) <= 0)
    throw InvalidInput("rhs must be positive, got " + rhs.get_str());
  const double t = log_abs(rhs) / static_cast<double>(X_.dim - 1);
  return solve_impl(t, rhs, true, tol);
}

EntropyResult EntropySolver::solve_impl(double t, const Rational &rhs, bool certified,
                                        const Rational &tol) const {
  if (sgn(tol) <= 0)
    throw InvalidInput("tolerance must be positive");
  const Rational &eps = bracket_epsilon();

  // S increases from 0 to infinity on (0, 1): widen the start bracket
  // geometrically towards 0 or 1 until it straddles rhs.
  Rational lo = eps, hi = 1 - eps;
  for (int i = 0; S_(lo) >= rhs; ++i) {
    if (i == 64)
      throw InvalidInput("rhs too small to bracket: " + to_decimal_string(rhs, 6));
    lo *= eps;
  }
  for (int i = 0; S_(hi) <= rhs; ++i) {
    if (i == 64)
      throw InvalidInput("rhs too large to bracket: " + to_decimal_string(rhs, 6));
    hi = 1 - (1 - hi) * eps;
  }

  EntropyResult r;
  r.t = t;
  r.rhs = rhs;
  r.certified_rhs = certified;
  r.bracket = certified_monotone_root(S_, rhs, lo, hi, tol, kMaxIterations);
  r.iterations = r.bracket.iterations;

  const long double x = newton_polish(S_, rhs, r.bracket);
  r.x = static_cast<double>(x);
  r.lambda = static_cast<double>(-std::log(x));
  const Rational mid = r.bracket.midpoint();
  r.residual = std::fabs(to_double(S_(mid) - rhs));
  if (!(r.lambda > 0.0))
    throw InvariantViolation("entropy must be positive, got " + std::to_string(r.lambda));
  return r;
}

EntropyResult solve_entropy(const VarietySpec &X, double t, const Rational &tol,
                            std::optional<Rational> certified_rhs) {
  const EntropySolver solver(X);
  if (certified_rhs)
    return solver.solve_rhs(*certified_rhs, tol);
  return solver.solve(t, tol);
}

// ---------------------------------------------------------------- curve

std::size_t CurvePolynomial::degree_y() const {
  std::size_t deg = 0;
  for (const auto &row : coeffs)
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0)
        deg = std::max(deg, j);
  return deg;
}

namespace {

long double horner(const std::vector<long double> &c, long double x) {
  long double acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

struct CurveValue {
  long double f, du, dy;
};

CurveValue eval_with_gradient(const CurvePolynomial &F, long double u, long double y) {
  // Rows as polynomials in y, then combine in u.
  std::vector<long double> row_val, row_dy;
  for (const auto &row : F.coeffs) {
    std::vector<long double> c(row.size()), dc;
    for (std::size_t j = 0; j < row.size(); ++j)
      c[j] = static_cast<long double>(row[j].get_d());
    for (std::size_t j = 1; j < c.size(); ++j)
      dc.push_back(c[j] * static_cast<long double>(j));
    row_val.push_back(horner(c, y));
    row_dy.push_back(horner(dc, y));
  }
  std::vector<long double> du_coef;
  for (std::size_t i = 1; i < row_val.size(); ++i)
    du_coef.push_back(row_val[i] * static_cast<long double>(i));
  return {horner(row_val, u), horner(du_coef, u), horner(row_dy, u)};
}

} // namespace

long double CurvePolynomial::eval(long double u, long double y) const {
  return eval_with_gradient(*this, u, y).f;
}

long double CurvePolynomial::normalized_residual(long double u, long double y) const {
  const CurveValue v = eval_with_gradient(*this, u, y);
  const long double g = std::hypot(v.du, v.dy);
  return g > 0 ? std::fabs(v.f) / g : std::fabs(v.f);
}

Polynomial CurvePolynomial::at_u(const Rational &u0) const {
  Polynomial out;
  Rational upow = 1;
  for (const auto &row : coeffs) {
    std::vector<Rational> c(row.begin(), row.end());
    out += Polynomial(std::move(c)) * upow;
    upow *= u0;
  }
  return out;
}

std::string CurvePolynomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    for (std::size_t j = coeffs[i].size(); j-- > 0;) {
      const Integer &c = coeffs[i][j];
      if (c == 0)
        continue;
      const Integer mag = abs(c);
      os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
      first = false;
      const bool bare = (mag == 1) && (i > 0 || j > 0);
      if (!bare)
        os << mag.get_str();
      bool need_star = !bare;
      if (i > 0) {
        os << (need_star ? "*" : "") << 'u' << (i > 1 ? "^" + std::to_string(i) : "");
        need_star = true;
      }
      if (j > 0)
        os << (need_star ? "*" : "") << 'y' << (j > 1 ? "^" + std::to_string(j) : "");
    }
  }
  return first ? "0" : os.str();
}

CurvePolynomial curve_from_series(const RationalFunction &S, int dim) {
  const Polynomial &N = S.num();
  const Polynomial &D = S.den();
  const auto m = static_cast<std::size_t>(std::max<std::ptrdiff_t>(N.degree(), D.degree()));
  // y^m S(1/y) = Nrev(y) / Drev(y); F = Nrev - u^{d-1} Drev.
  const Polynomial Nrev = N.reversed(m);
  const Polynomial Drev = D.reversed(m);
  const std::size_t ydeg = m + 1;
  const auto ushift = static_cast<std::size_t>(dim - 1);

  std::vector<Rational> flat((ushift + 1) * ydeg);
  for (std::size_t j = 0; j < ydeg; ++j) {
    flat[j] = Nrev.coeff(j);
    flat[ushift * ydeg + j] = -Drev.coeff(j);
  }
  const std::vector<Integer> ints = clear_denominators(flat);
  CurvePolynomial F;
  F.coeffs.assign(ushift + 1, std::vector<Integer>(ydeg));
  for (std::size_t i = 0; i <= ushift; ++i)
    for (std::size_t j = 0; j < ydeg; ++j)
      F.coeffs[i][j] = ints[i * ydeg + j];
  return F;
}

CurvePolynomial entropy_curve(const VarietySpec &X) {
  if (!X.is_calabi_yau_hypersurface())
    return curve_from_series(hilbert_series_closed_form(X), X.dim);
  const auto n = static_cast<std::size_t>(X.degree);
  const auto ushift = static_cast<std::size_t>(X.dim - 1);
  CurvePolynomial F;
  F.coeffs.assign(ushift + 1, std::vector<Integer>(n + 1));
  // (y - 1)^n coefficients
  std::vector<Integer> binom(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, j);
    binom[j] = ((n - j) % 2 == 0) ? b : Integer(-b);
  }
  F.coeffs[0][n] += 1;
  F.coeffs[0][0] -= 1;
  for (std::size_t j = 0; j <= n; ++j) {
    F.coeffs[0][j] -= binom[j];
    F.coeffs[ushift][j] -= binom[j];
  }
  return F;
}

// ---------------------------------------------------------------- sweep

namespace {

double grid_point(double t_min, double t_max, int steps, int i) {
  return t_min + (t_max - t_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

void check_grid(double t_min, double t_max, int steps) {
  if (steps < 2)
    throw InvalidInput("sweep needs at least 2 steps");
  if (!(t_min < t_max))
    throw InvalidInput("sweep needs t_min < t_max");
}

SweepRow sweep_row(const EntropySolver &solver, const CurvePolynomial &F, double t_min,
                   double t_max, int steps, int i, const Rational &tol) {
  SweepRow row;
  row.index = static_cast<std::size_t>(i);
  row.result = solver.solve(grid_point(t_min, t_max, steps, i), tol);
  row.curve_residual = static_cast<double>(F.normalized_residual(
      std::exp(static_cast<long double>(row.result.t)),
      std::exp(static_cast<long double>(row.result.lambda))));
  return row;
}

} // namespace

std::vector<SweepRow> sweep_serial(const VarietySpec &X, double t_min, double t_max,
                                   int steps, const Rational &tol) {
  check_grid(t_min, t_max, steps);
  const EntropySolver solver(X);
  const CurvePolynomial F = entropy_curve(X);
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    try {
      rows.push_back(sweep_row(solver, F, t_min, t_max, steps, i, tol));
    } catch (const NonConvergence &e) {
      throw NonConvergence("grid index " + std::to_string(i) + ": " + e.what());
    } catch (const InvalidInput &e) {
      throw InvalidInput("grid index " + std::to_string(i) + ": " + e.what());
    }
  }
  return rows;
}

std::vector<SweepRow> sweep(const VarietySpec &X, double t_min, double t_max, int steps,
                            const Rational &tol) {
  check_grid(t_min, t_max, steps);
  const EntropySolver solver(X);
  const CurvePolynomial F = entropy_curve(X);
  std::vector<SweepRow> rows(static_cast<std::size_t>(steps));
  // 0 = ok, 1 = invalid input, 2 = non-convergence, 3 = other
  std::vector<int> failure(static_cast<std::size_t>(steps), 0);
  std::vector<std::string> message(static_cast<std::size_t>(steps));

#pragma omp parallel for schedule(dynamic) num_threads(configured_threads())
  for (int i = 0; i < steps; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      rows[idx] = sweep_row(solver, F, t_min, t_max, steps, i, tol);
    } catch (const NonConvergence &e) {
      failure[idx] = 2;
      message[idx] = e.what();
    } catch (const InvalidInput &e) {
      failure[idx] = 1;
      message[idx] = e.what();
    } catch (const std::exception &e) {
      failure[idx] = 3;
      message[idx] = e.what();
    }
  }

  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (failure[i] == 0)
      continue;
    const std::string what = "grid index " + std::to_string(i) + ": " + message[i];
    if (failure[i] == 1)
      throw InvalidInput(what);
    if (failure[i] == 2)
      throw NonConvergence(what);
    throw InvariantViolation(what);
  }
  return rows;
}

} // namespace cyent
