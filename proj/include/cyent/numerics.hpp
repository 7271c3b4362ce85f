#pragma once

// Exact arithmetic substrate: GMP-backed rationals, dense univariate
// polynomials over Q, rational functions, truncated power series, and a
// certified bisection for monotone rational functions.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cyent {

using Integer = mpz_class;
using Rational = mpq_class; // canonical: reduced, denominator > 0

// num/den in canonical form (den != 0).
Rational ratio(const Integer &num, const Integer &den);

int sign(const Rational &q);
double to_double(const Rational &q);
// Natural log of |q| without overflowing doubles for huge numerators.
double log_abs(const Rational &q);

// Accepts "p", "p/q", "-p/q" and plain decimals such as "0.125" or "1e-3".
Rational parse_rational(std::string_view text);
// "p/q", or "p" for integers.
std::string to_fraction_string(const Rational &q);
// Scientific notation with `digits` significant digits, e.g. "1.2946e-01".
std::string to_decimal_string(const Rational &q, int digits = 25);

// m(m-1)...(m-r+1)/r!, polynomial in m (signed for m < 0, never truncated).
Rational generalized_binomial(const Integer &m, unsigned r);
inline Rational generalized_binomial(long m, unsigned r) {
  return generalized_binomial(Integer(m), r);
}

class Polynomial {
public:
  // Degree of the zero polynomial.
  static constexpr std::ptrdiff_t kZeroDegree =
      std::numeric_limits<std::ptrdiff_t>::min();

  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(std::initializer_list<Rational> coeffs);

  static Polynomial constant(const Rational &c);
  static Polynomial monomial(const Rational &c, std::size_t degree);
  static Polynomial identity() { return monomial(1, 1); }

  std::ptrdiff_t degree() const;
  bool is_zero() const { return coeffs_.empty(); }
  // Zero beyond the stored range.
  Rational coeff(std::size_t i) const;
  const Rational &leading() const;
  std::span<const Rational> coefficients() const { return coeffs_; }

  Rational operator()(const Rational &x) const;
  long double eval(long double x) const;

  Polynomial derivative() const;
  Polynomial monic() const;
  Polynomial truncated(std::size_t max_degree) const;
  // y^n p(1/y); requires n >= degree.
  Polynomial reversed(std::size_t n) const;
  Polynomial pow(unsigned e) const;
  // Substitute x -> c*x.
  Polynomial scaled_argument(const Rational &c) const;

  Polynomial operator-() const;
  Polynomial &operator+=(const Polynomial &o);
  Polynomial &operator-=(const Polynomial &o);
  Polynomial &operator*=(const Polynomial &o);
  Polynomial &operator*=(const Rational &c);

  friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial &b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational &c) { return a *= c; }
  friend Polynomial operator*(const Rational &c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial &, const Polynomial &) = default;

  // Euclidean division over Q; throws std::domain_error on zero divisor.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial &a,
                                                  const Polynomial &b);
  // Monic gcd; gcd(0, 0) = 0.
  static Polynomial gcd(Polynomial a, Polynomial b);

  std::string to_string(char var = 'x') const;

private:
  void trim();
  std::vector<Rational> coeffs_; // index = degree, no trailing zeros
};

// Truncated power series helpers on polynomials (all results truncated at
// degree `order`).
Polynomial series_inverse(const Polynomial &p, std::size_t order);
Polynomial series_log(const Polynomial &p, std::size_t order); // p(0) = 1
Polynomial series_exp(const Polynomial &p, std::size_t order); // p(0) = 0

class RationalFunction {
public:
  RationalFunction() : den_(Polynomial::constant(1)) {}
  // Normalizes: cancels the gcd and makes the denominator monic.
  RationalFunction(Polynomial num, Polynomial den);
  explicit RationalFunction(Polynomial num)
      : RationalFunction(std::move(num), Polynomial::constant(1)) {}

  const Polynomial &num() const { return num_; }
  const Polynomial &den() const { return den_; }

  // Throws PoleError when den(x) = 0.
  Rational operator()(const Rational &x) const;
  long double eval(long double x) const;

  RationalFunction derivative() const;
  // Taylor coefficients of x^0..x^order; requires den(0) != 0.
  std::vector<Rational> series(std::size_t order) const;

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction &a, const RationalFunction &b);
  friend RationalFunction operator-(const RationalFunction &a, const RationalFunction &b);
  friend RationalFunction operator*(const RationalFunction &a, const RationalFunction &b);
  friend RationalFunction operator/(const RationalFunction &a, const RationalFunction &b);
  friend bool operator==(const RationalFunction &, const RationalFunction &) = default;

  std::string to_string(char var = 'x') const;

private:
  Polynomial num_;
  Polynomial den_;
};

struct CertifiedBracket {
  Rational lo;
  Rational hi;
  int f_lo_sign = 0; // sign of f(lo) - target
  int f_hi_sign = 0;
  std::size_t iterations = 0;

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
};

// Exact bisection for f(x) = target on [lo, hi], f monotone there. Every
// comparison is made in exact rational arithmetic. Throws NoSignChange when
// the endpoint signs do not differ, PoleError (non-finite endpoint) when f
// has a pole at an endpoint, ToleranceNotAchieved past max_iter.
CertifiedBracket certified_monotone_root(const RationalFunction &f,
                                         const Rational &target,
                                         const Rational &lo, const Rational &hi,
                                         const Rational &tol,
                                         std::size_t max_iter = 100000);

// Newton iterations in long double started from the bracket midpoint; the
// result is clamped back to the bracket midpoint if it leaves [lo, hi].
long double newton_polish(const RationalFunction &f, const Rational &target,
                          const CertifiedBracket &bracket, int steps = 4);

} // namespace cyent
