#pragma once

// Categorical entropy of T_O o (- (x) O(-1)) on a Calabi-Yau X: the unique
// lambda > 0 with  sum_{k>=1} chi(O(k)) e^{-k lambda} = e^{(d-1)t}.
//
// Everything is solved in the variable x = e^{-lambda} in (0, 1), where the
// left side is the Hilbert series S(x), a rational function strictly
// increasing from S(0) = 0 to +infinity as x -> 1. The root is bracketed by
// exact bisection; lambda is only formed at the end.

#include "cyent/geometry.hpp"
#include "cyent/numerics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cyent {

struct EntropyResult {
  double t = 0.0;
  Rational rhs;              // e^{(d-1)t}, exactly as used by the bisection
  bool certified_rhs = false; // rhs supplied exactly by the caller
  double x = 0.0;            // e^{-lambda}
  double lambda = 0.0;
  CertifiedBracket bracket;  // on x
  double residual = 0.0;     // |S(mid) - rhs|, evaluated exactly
  std::size_t iterations = 0;
};

// Integer bivariate polynomial F(u, y), coefficient of u^i y^j at [i][j].
// F(e^t, e^{h_t}) = 0 along the entropy curve.
struct CurvePolynomial {
  std::vector<std::vector<Integer>> coeffs;

  std::size_t degree_u() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  std::size_t degree_y() const;
  long double eval(long double u, long double y) const;
  // |F| / |grad F| at (u, y).
  long double normalized_residual(long double u, long double y) const;
  // F(u0, y) as a univariate polynomial in y.
  Polynomial at_u(const Rational &u0) const;
  std::string to_string() const;
  friend bool operator==(const CurvePolynomial &, const CurvePolynomial &) = default;
};

// S(x) = sum_{k>=1} a_k x^k in closed form, derived from the Hilbert
// polynomial through the identities for sum_{k>=1} k^m x^k.
RationalFunction hilbert_series_closed_form(const VarietySpec &X);

// 2^-64 of the initial bracket (2^-20, 1 - 2^-20).
Rational default_tolerance();

class EntropySolver {
public:
  explicit EntropySolver(VarietySpec X);

  const VarietySpec &variety() const { return X_; }
  const RationalFunction &series() const { return S_; }

  // rhs = e^{(d-1)t} rounded to double, then taken exactly (one ulp slack).
  EntropyResult solve(double t, const Rational &tol) const;
  // rhs used verbatim; t is reported as log(rhs)/(d-1).
  EntropyResult solve_rhs(const Rational &rhs, const Rational &tol) const;

  static constexpr std::size_t kMaxIterations = 4096;

private:
  EntropyResult solve_impl(double t, const Rational &rhs, bool certified,
                           const Rational &tol) const;

  VarietySpec X_;
  RationalFunction S_;
};

EntropyResult solve_entropy(const VarietySpec &X, double t, const Rational &tol,
                            std::optional<Rational> certified_rhs = std::nullopt);

// y^{d+2} - 1 - (1 + u^{d-1}) (y-1)^{d+2} for the builtin Calabi-Yau case
// (y = 1 is a spurious root introduced by clearing denominators); otherwise
// the cleared form of S(1/y) - u^{d-1}.
CurvePolynomial entropy_curve(const VarietySpec &X);
// Clears denominators of S(1/y) - u^{d-1} for an arbitrary series.
CurvePolynomial curve_from_series(const RationalFunction &S, int dim);

struct SweepRow {
  std::size_t index = 0;
  EntropyResult result;
  double curve_residual = 0.0;
};

// Grid t_i = t_min + i (t_max - t_min) / (steps - 1). Grid points are
// independent; rows come back in index order. Solver failures are rethrown
// with the offending grid index.
std::vector<SweepRow> sweep(const VarietySpec &X, double t_min, double t_max, int steps,
                            const Rational &tol);
// Single-threaded reference for the parallel sweep.
std::vector<SweepRow> sweep_serial(const VarietySpec &X, double t_min, double t_max,
                                   int steps, const Rational &tol);

} // namespace cyent
