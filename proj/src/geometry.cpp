#include "cyent/geometry.hpp"

#include "cyent/errors.hpp"

#include <string>

namespace cyent {

namespace {

Integer factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

// B(k + c, r) as a polynomial in k.
Polynomial shifted_binomial_polynomial(long c, unsigned r) {
  Polynomial p = Polynomial::constant(1);
  for (unsigned j = 0; j < r; ++j)
    p *= Polynomial{Rational(c - static_cast<long>(j)), Rational(1)};
  return p * ratio(1, factorial(r));
}

// Coefficients of log(x / (1 - e^{-x})) up to x^order.
Polynomial todd_log_series(std::size_t order) {
  // (1 - e^{-x}) / x = sum_k (-1)^k x^k / (k+1)!
  std::vector<Rational> v(order + 1);
  for (std::size_t k = 0; k <= order; ++k) {
    const Rational term = ratio(1, factorial(static_cast<unsigned>(k + 1)));
    v[k] = (k % 2 == 0) ? term : Rational(-term);
  }
  return -series_log(Polynomial(std::move(v)), order);
}

void check_user_hilbert(int dim, const Polynomial &p) {
  if (p.degree() != dim)
    throw InvalidInput("Hilbert polynomial must have degree " + std::to_string(dim));
  Integer prev = 0;
  for (int k = 1; k <= hilbert_check_points(dim); ++k) {
    const Rational v = p(Rational(k));
    if (v.get_den() != 1)
      throw InvalidInput("Hilbert polynomial is not integral at k = " + std::to_string(k));
    if (v.get_num() <= prev)
      throw InvalidInput("Hilbert data is not a strictly increasing positive sequence at k = " +
                         std::to_string(k));
    prev = v.get_num();
  }
}

} // namespace

VarietySpec make_variety(int dim, std::optional<int> degree, std::optional<Polynomial> hilbert) {
  if (dim < 3)
    throw DimensionTooSmall(dim);
  VarietySpec X;
  X.dim = dim;
  if (hilbert) {
    check_user_hilbert(dim, *hilbert);
    X.mode = VarietyMode::UserHilbert;
    X.hilbert = *hilbert;
    const Rational top = hilbert->leading() * Rational(factorial(static_cast<unsigned>(dim)));
    if (top.get_den() != 1)
      throw InvalidInput("leading coefficient times d! must be an integer");
    X.top_intersection = top.get_num();
    X.degree = static_cast<int>(X.top_intersection.get_si());
    return X;
  }
  const int n = degree.value_or(dim + 2);
  if (n < 1)
    throw InvalidInput("hypersurface degree must be >= 1, got " + std::to_string(n));
  X.degree = n;
  X.top_intersection = n;
  X.mode = VarietyMode::BuiltinHypersurface;
  // a_k must be positive and increasing for the entropy formula to apply.
  Integer prev = 0;
  for (int k = 1; k <= hilbert_check_points(dim); ++k) {
    const Integer a = euler_characteristic(X, k);
    if (a <= prev)
      throw InvalidInput("chi(O(k)) is not strictly increasing for this degree");
    prev = a;
  }
  return X;
}

Integer euler_characteristic(const VarietySpec &X, long k) {
  if (!X.is_builtin()) {
    const Rational v = X.hilbert(Rational(k));
    return v.get_num() / v.get_den();
  }
  const unsigned r = static_cast<unsigned>(X.dim + 1);
  const Rational v = generalized_binomial(k + X.dim + 1, r) -
                     generalized_binomial(k - X.degree + X.dim + 1, r);
  return v.get_num();
}

Polynomial hilbert_polynomial(const VarietySpec &X) {
  if (!X.is_builtin())
    return X.hilbert;
  const unsigned r = static_cast<unsigned>(X.dim + 1);
  return shifted_binomial_polynomial(X.dim + 1, r) -
         shifted_binomial_polynomial(X.dim + 1 - X.degree, r);
}

CharacteristicClasses characteristic_classes(const VarietySpec &X) {
  if (!X.is_builtin())
    throw UnsupportedMode("characteristic classes need a builtin hypersurface");
  const auto d = static_cast<std::size_t>(X.dim);

  // c(T_X) = (1+H)^{d+2} / (1 + nH)
  const Polynomial ambient = Polynomial{1, 1}.pow(static_cast<unsigned>(X.dim + 2));
  const Polynomial normal{Rational(1), Rational(X.degree)};
  const Polynomial chern = (ambient * series_inverse(normal, d)).truncated(d);

  // Newton's identities: power sums of the Chern roots.
  std::vector<Rational> e(d + 1), p(d + 1);
  for (std::size_t i = 0; i <= d; ++i)
    e[i] = chern.coeff(i);
  for (std::size_t k = 1; k <= d; ++k) {
    Rational acc = e[k] * static_cast<unsigned long>(k);
    if (k % 2 == 0)
      acc = -acc;
    for (std::size_t i = 1; i < k; ++i) {
      const Rational term = e[i] * p[k - i];
      acc += (i % 2 == 1) ? term : Rational(-term);
    }
    p[k] = acc;
  }

  const Polynomial b = todd_log_series(d);
  std::vector<Rational> log_td(d + 1);
  for (std::size_t k = 1; k <= d; ++k)
    log_td[k] = b.coeff(k) * p[k];
  const Polynomial log_todd(std::move(log_td));
  const Polynomial todd = series_exp(log_todd, d);
  const Polynomial sqrt_todd = series_exp(log_todd * Rational(1, 2), d);

  CharacteristicClasses out;
  out.chern.resize(d + 1);
  out.todd.resize(d + 1);
  out.sqrt_todd.resize(d + 1);
  for (std::size_t i = 0; i <= d; ++i) {
    out.chern[i] = chern.coeff(i);
    out.todd[i] = todd.coeff(i);
    out.sqrt_todd[i] = sqrt_todd.coeff(i);
  }
  return out;
}

Rational hrr_euler_characteristic(const VarietySpec &X, const CharacteristicClasses &classes,
                                  long k) {
  const auto d = static_cast<unsigned>(X.dim);
  // H^d coefficient of e^{kH} td = sum_i td_i k^{d-i} / (d-i)!
  Rational acc = 0;
  Integer kpow = 1;
  for (unsigned j = 0; j <= d; ++j) {
    acc += classes.todd[d - j] * ratio(kpow, factorial(j));
    kpow *= k;
  }
  return acc * Rational(X.top_intersection);
}

} // namespace cyent
