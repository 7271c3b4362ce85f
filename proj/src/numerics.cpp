#include "cyent/numerics.hpp"

#include "cyent/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cyent {

Rational ratio(const Integer &num, const Integer &den) {
  if (den == 0)
    throw std::domain_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

int sign(const Rational &q) { return sgn(q); }

double to_double(const Rational &q) { return q.get_d(); }

namespace {

long double to_long_double(const Rational &q) {
  // Two-term double expansion; enough for long double's 64-bit mantissa.
  const double hi = q.get_d();
  if (!std::isfinite(hi))
    return hi;
  const Rational rest = q - Rational(hi);
  return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

double log_abs_integer(const Integer &z) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

std::string trim_copy(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return std::string(s.substr(b, e - b));
}

Rational parse_decimal(const std::string &s) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-'))
    negative = s[i++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false, seen_digit = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point)
        ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit)
    throw InvalidInput("not a number: '" + s + "'");
  long exponent = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    std::size_t used = 0;
    try {
      exponent = std::stol(s.substr(i), &used);
    } catch (const std::exception &) {
      throw InvalidInput("bad exponent in '" + s + "'");
    }
    i += used;
  }
  if (i != s.size())
    throw InvalidInput("trailing characters in '" + s + "'");
  Rational value{Integer(digits, 10)};
  const long shift = exponent - frac_digits;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  if (shift >= 0)
    value *= scale;
  else
    value /= scale;
  return negative ? Rational(-value) : value;
}

} // namespace

double log_abs(const Rational &q) {
  if (sgn(q) == 0)
    return -std::numeric_limits<double>::infinity();
  return log_abs_integer(q.get_num()) - log_abs_integer(q.get_den());
}

Rational parse_rational(std::string_view text) {
  const std::string s = trim_copy(text);
  if (s.empty())
    throw InvalidInput("empty rational literal");
  if (s.find('/') != std::string::npos) {
    const auto slash = s.find('/');
    const std::string num = trim_copy(s.substr(0, slash));
    const std::string den = trim_copy(s.substr(slash + 1));
    Integer n, d;
    if (n.set_str(num[0] == '+' ? num.substr(1) : num, 10) != 0 || d.set_str(den, 10) != 0)
      throw InvalidInput("not a rational: '" + s + "'");
    if (d == 0)
      throw InvalidInput("zero denominator in '" + s + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
  }
  return parse_decimal(s);
}

std::string to_fraction_string(const Rational &q) { return q.get_str(); }

std::string to_decimal_string(const Rational &q, int digits) {
  if (sgn(q) == 0)
    return "0";
  const mpf_class f(q, 512);
  const int n = gmp_snprintf(nullptr, 0, "%.*Fe", digits - 1, f.get_mpf_t());
  std::string out(static_cast<std::size_t>(n) + 1, '\0');
  gmp_snprintf(out.data(), out.size(), "%.*Fe", digits - 1, f.get_mpf_t());
  out.resize(static_cast<std::size_t>(n));
  return out;
}

Rational generalized_binomial(const Integer &m, unsigned r) {
  Integer num = 1;
  for (unsigned j = 0; j < r; ++j)
    num *= m - j;
  Integer fact;
  mpz_fac_ui(fact.get_mpz_t(), r);
  Rational out(num, fact);
  out.canonicalize();
  return out;
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

Polynomial::Polynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) {
  trim();
}

Polynomial Polynomial::constant(const Rational &c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const Rational &c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0)
    coeffs_.pop_back();
}

std::ptrdiff_t Polynomial::degree() const {
  return coeffs_.empty() ? kZeroDegree : static_cast<std::ptrdiff_t>(coeffs_.size()) - 1;
}

Rational Polynomial::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : Rational(0);
}

const Rational &Polynomial::leading() const {
  if (coeffs_.empty())
    throw std::domain_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Rational Polynomial::operator()(const Rational &x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

long double Polynomial::eval(long double x) const {
  long double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + to_long_double(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1)
    return {};
  std::vector<Rational> v(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return Polynomial(std::move(v));
}

Polynomial Polynomial::monic() const {
  if (is_zero())
    return {};
  Polynomial out = *this;
  const Rational lead = leading();
  for (auto &c : out.coeffs_)
    c /= lead;
  return out;
}

Polynomial Polynomial::truncated(std::size_t max_degree) const {
  if (coeffs_.size() <= max_degree + 1)
    return *this;
  return Polynomial(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + max_degree + 1));
}

Polynomial Polynomial::reversed(std::size_t n) const {
  if (is_zero())
    return {};
  if (static_cast<std::ptrdiff_t>(n) < degree())
    throw std::domain_error("reversal length below degree");
  std::vector<Rational> v(n + 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    v[n - i] = coeffs_[i];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(1), base = *this;
  while (e) {
    if (e & 1u)
      result *= base;
    e >>= 1u;
    if (e)
      base *= base;
  }
  return result;
}

Polynomial Polynomial::scaled_argument(const Rational &c) const {
  Polynomial out = *this;
  Rational power = 1;
  for (auto &coef : out.coeffs_) {
    coef *= power;
    power *= c;
  }
  out.trim();
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto &c : out.coeffs_)
    c = -c;
  return out;
}

Polynomial &Polynomial::operator+=(const Polynomial &o) {
  if (o.coeffs_.size() > coeffs_.size())
    coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
    coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Polynomial &Polynomial::operator-=(const Polynomial &o) {
  if (o.coeffs_.size() > coeffs_.size())
    coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
    coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Polynomial &Polynomial::operator*=(const Polynomial &o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> v(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0)
      continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      v[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(v);
  trim();
  return *this;
}

Polynomial &Polynomial::operator*=(const Rational &c) {
  for (auto &coef : coeffs_)
    coef *= c;
  trim();
  return *this;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial &a, const Polynomial &b) {
  if (b.is_zero())
    throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree())
    return {Polynomial{}, a};
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<Rational> rem = a.coeffs_;
  std::vector<Rational> quot(rem.size() - db);
  const Rational &lead = b.leading();
  for (std::size_t i = rem.size(); i-- > db;) {
    if (sgn(rem[i]) == 0)
      continue;
    const Rational q = rem[i] / lead;
    quot[i - db] = q;
    for (std::size_t j = 0; j <= db; ++j)
      rem[i - db + j] -= q * b.coeffs_[j];
  }
  rem.resize(db);
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::string Polynomial::to_string(char var) const {
  if (is_zero())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Rational &c = coeffs_[i];
    if (sgn(c) == 0)
      continue;
    Rational mag = abs(c);
    if (first)
      os << (sgn(c) < 0 ? "-" : "");
    else
      os << (sgn(c) < 0 ? " - " : " + ");
    first = false;
    const bool unit = (mag == 1);
    if (!unit || i == 0)
      os << mag.get_str();
    if (i > 0) {
      if (!unit)
        os << '*';
      os << var;
      if (i > 1)
        os << '^' << i;
    }
  }
  return os.str();
}

// ------------------------------------------------------------ power series

Polynomial series_inverse(const Polynomial &p, std::size_t order) {
  const Rational c0 = p.coeff(0);
  if (sgn(c0) == 0)
    throw std::domain_error("series inverse needs a nonzero constant term");
  std::vector<Rational> inv(order + 1);
  inv[0] = 1 / c0;
  for (std::size_t n = 1; n <= order; ++n) {
    Rational acc = 0;
    for (std::size_t k = 1; k <= n; ++k)
      acc += p.coeff(k) * inv[n - k];
    inv[n] = -acc / c0;
  }
  return Polynomial(std::move(inv));
}

Polynomial series_log(const Polynomial &p, std::size_t order) {
  if (p.coeff(0) != 1)
    throw std::domain_error("series log needs constant term 1");
  // log p = integral of p'/p
  const Polynomial q = (p.derivative() * series_inverse(p, order)).truncated(order);
  std::vector<Rational> v(order + 1);
  for (std::size_t n = 1; n <= order; ++n)
    v[n] = q.coeff(n - 1) / static_cast<unsigned long>(n);
  return Polynomial(std::move(v));
}

Polynomial series_exp(const Polynomial &p, std::size_t order) {
  if (sgn(p.coeff(0)) != 0)
    throw std::domain_error("series exp needs zero constant term");
  // e' = p' e, so n e_n = sum_{k=1}^{n} k p_k e_{n-k}
  std::vector<Rational> e(order + 1);
  e[0] = 1;
  for (std::size_t n = 1; n <= order; ++n) {
    Rational acc = 0;
    for (std::size_t k = 1; k <= n; ++k)
      acc += p.coeff(k) * static_cast<unsigned long>(k) * e[n - k];
    e[n] = acc / static_cast<unsigned long>(n);
  }
  return Polynomial(std::move(e));
}

// ------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(Polynomial num, Polynomial den) {
  if (den.is_zero())
    throw std::domain_error("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = {};
    den_ = Polynomial::constant(1);
    return;
  }
  const Polynomial g = Polynomial::gcd(num, den);
  num = Polynomial::divmod(num, g).first;
  den = Polynomial::divmod(den, g).first;
  const Rational lead = den.leading();
  num_ = num * Rational(1 / lead);
  den_ = den.monic();
}

Rational RationalFunction::operator()(const Rational &x) const {
  const Rational d = den_(x);
  if (sgn(d) == 0)
    throw PoleError("pole at x = " + x.get_str());
  return num_(x) / d;
}

long double RationalFunction::eval(long double x) const { return num_.eval(x) / den_.eval(x); }

RationalFunction RationalFunction::derivative() const {
  return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

std::vector<Rational> RationalFunction::series(std::size_t order) const {
  if (sgn(den_.coeff(0)) == 0)
    throw PoleError("series expansion needs den(0) != 0");
  const Polynomial s = (num_ * series_inverse(den_, order)).truncated(order);
  std::vector<Rational> out(order + 1);
  for (std::size_t i = 0; i <= order; ++i)
    out[i] = s.coeff(i);
  return out;
}

RationalFunction RationalFunction::operator-() const { return RationalFunction(-num_, den_); }

RationalFunction operator+(const RationalFunction &a, const RationalFunction &b) {
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction &a, const RationalFunction &b) {
  return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction &a, const RationalFunction &b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction &a, const RationalFunction &b) {
  if (b.num_.is_zero())
    throw std::domain_error("rational function division by zero");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RationalFunction::to_string(char var) const {
  if (den_ == Polynomial::constant(1))
    return num_.to_string(var);
  return "(" + num_.to_string(var) + ") / (" + den_.to_string(var) + ")";
}

// ------------------------------------------------------ certified bisection

namespace {

int residual_sign(const RationalFunction &f, const Rational &x, const Rational &target) {
  return sgn(f(x) - target);
}

} // namespace

CertifiedBracket certified_monotone_root(const RationalFunction &f, const Rational &target,
                                         const Rational &lo, const Rational &hi,
                                         const Rational &tol, std::size_t max_iter) {
  if (sgn(tol) <= 0)
    throw InvalidInput("tolerance must be positive");
  if (lo >= hi)
    throw InvalidInput("empty interval [" + lo.get_str() + ", " + hi.get_str() + "]");

  CertifiedBracket b;
  b.lo = lo;
  b.hi = hi;
  try {
    b.f_lo_sign = residual_sign(f, lo, target);
    b.f_hi_sign = residual_sign(f, hi, target);
  } catch (const PoleError &e) {
    throw PoleError(std::string("non-finite endpoint: ") + e.what());
  }
  if (b.f_lo_sign == b.f_hi_sign || b.f_lo_sign * b.f_hi_sign > 0)
    throw NoSignChange("no sign change of f - target on [" + lo.get_str() + ", " +
                       hi.get_str() + "]");
  // f(lo) = target exactly: report [lo, lo + w] with a zero sign at lo.
  if (b.f_lo_sign == 0) {
    b.hi = b.lo + std::min<Rational>(tol, hi - lo);
    b.f_hi_sign = residual_sign(f, b.hi, target);
    return b;
  }

  while (b.width() > tol) {
    if (b.iterations >= max_iter)
      throw ToleranceNotAchieved("bisection did not reach tolerance within " +
                                 std::to_string(max_iter) + " iterations");
    const Rational mid = b.midpoint();
    const int s = residual_sign(f, mid, target);
    if (s == b.f_lo_sign) {
      b.lo = mid;
    } else {
      b.hi = mid;
      b.f_hi_sign = s;
    }
    ++b.iterations;
  }
  return b;
}

long double newton_polish(const RationalFunction &f, const Rational &target,
                          const CertifiedBracket &bracket, int steps) {
  const long double lo = to_long_double(bracket.lo);
  const long double hi = to_long_double(bracket.hi);
  const long double mid = to_long_double(bracket.midpoint());
  const RationalFunction df = f.derivative();
  const long double tgt = to_long_double(target);
  long double x = mid;
  for (int i = 0; i < steps; ++i) {
    const long double slope = df.eval(x);
    if (!std::isfinite(slope) || slope == 0.0L)
      break;
    const long double next = x - (f.eval(x) - tgt) / slope;
    if (!std::isfinite(next))
      break;
    x = next;
  }
  if (!(x >= lo && x <= hi))
    return mid;
  return x;
}

} // namespace cyent
