#include "cyent/errors.hpp"
#include "cyent/numerics.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cyent;

namespace {

// (1 - x^n) / (1 - x)^n - 1
RationalFunction cy_series(unsigned n) {
  const Polynomial x = Polynomial::identity();
  const Polynomial one = Polynomial::constant(1);
  const Polynomial den = (one - x).pow(n);
  return RationalFunction(one - x.pow(n) - den, den);
}

Integer factorial(unsigned n) {
  Integer f = 1;
  for (unsigned i = 2; i <= n; ++i)
    f *= i;
  return f;
}

Polynomial random_poly(std::mt19937_64 &rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree), c(-9, 9), dd(1, 5);
  std::vector<Rational> coeffs(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto &q : coeffs)
    q = ratio(c(rng), dd(rng));
  return Polynomial(std::move(coeffs));
}

} // namespace

TEST(Binomial, SpecValues) {
  EXPECT_EQ(generalized_binomial(5, 4), 5);
  EXPECT_EQ(generalized_binomial(-1, 4), 1);
  EXPECT_EQ(generalized_binomial(9, 4), 126);
  EXPECT_EQ(generalized_binomial(3, 0), 1);
  EXPECT_EQ(generalized_binomial(3, 4), 0);
}

TEST(Binomial, FactorialAndPascalOracles) {
  for (long m = -50; m <= 50; ++m)
    for (unsigned r = 1; r <= 12; ++r) {
      EXPECT_EQ(generalized_binomial(m, r),
                generalized_binomial(m - 1, r) + generalized_binomial(m - 1, r - 1));
      if (m >= static_cast<long>(r))
        EXPECT_EQ(generalized_binomial(m, r),
                  Rational(factorial(static_cast<unsigned>(m)) /
                           (factorial(r) * factorial(static_cast<unsigned>(m) - r))));
    }
}

TEST(Rationals, ParseAndFormat) {
  EXPECT_EQ(parse_rational("3/6"), ratio(1, 2));
  EXPECT_EQ(parse_rational("-0.125"), ratio(-1, 8));
  EXPECT_EQ(parse_rational("1e-3"), ratio(1, 1000));
  EXPECT_EQ(parse_rational("2.5E2"), 250);
  EXPECT_THROW(parse_rational("1/0"), InvalidInput);
  EXPECT_THROW(parse_rational("abc"), InvalidInput);
  EXPECT_EQ(to_fraction_string(ratio(-6, 4)), "-3/2");
  EXPECT_EQ(to_fraction_string(Rational(7)), "7");
  EXPECT_EQ(to_decimal_string(ratio(1, 8), 3), "1.25e-01");
}

TEST(Rationals, LogAbsHugeValues) {
  Integer big;
  mpz_ui_pow_ui(big.get_mpz_t(), 10, 2000);
  EXPECT_NEAR(log_abs(Rational(big)), 2000 * std::log(10.0), 1e-9);
  EXPECT_NEAR(log_abs(ratio(1, big)), -2000 * std::log(10.0), 1e-9);
}

TEST(Polynomial, ZeroAndDegree) {
  Polynomial z;
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.degree(), Polynomial::kZeroDegree);
  Polynomial p{1, 0, 0};
  EXPECT_EQ(p.degree(), 0);
  EXPECT_EQ((p - p).degree(), Polynomial::kZeroDegree);
}

TEST(Polynomial, RandomizedRingLaws) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Polynomial a = random_poly(rng, 6), b = random_poly(rng, 6), c = random_poly(rng, 6);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    const Rational x = ratio(static_cast<long>(rng() % 41) - 20, 7);
    EXPECT_EQ((a * b)(x), a(x) * b(x));
    if (!b.is_zero()) {
      const auto [q, r] = Polynomial::divmod(a, b);
      EXPECT_EQ(q * b + r, a);
      EXPECT_LT(r.degree(), b.degree());
    }
  }
}

TEST(Polynomial, GcdAndDivisionByZero) {
  const Polynomial x = Polynomial::identity();
  const Polynomial one = Polynomial::constant(1);
  const Polynomial g = Polynomial::gcd((x - one) * (x + one) * 3, (x - one).pow(2) * 2);
  EXPECT_EQ(g, x - one);
  EXPECT_THROW(Polynomial::divmod(x, Polynomial()), std::domain_error);
}

TEST(Series, LogExpInverse) {
  const Polynomial x = Polynomial::identity();
  const Polynomial p = Polynomial::constant(1) + x * 3 + x.pow(2) * ratio(1, 2);
  EXPECT_EQ(series_exp(series_log(p, 10), 10), p);
  EXPECT_EQ((series_inverse(p, 10) * p).truncated(10), Polynomial::constant(1));
}

TEST(RatFun, SpecEvaluations) {
  const Polynomial x = Polynomial::identity();
  const RationalFunction f(x, Polynomial::constant(1) - x);
  EXPECT_EQ(f(ratio(1, 2)), 1);
  EXPECT_THROW(f(Rational(1)), PoleError);

  // The exact values bracket 1 = e^0, equivalently 2 for S + 1.
  const RationalFunction S = cy_series(5);
  EXPECT_EQ(S(ratio(12, 100)), ratio(209625, 234256));
  EXPECT_EQ(S(ratio(13, 100)), ratio(57648500, 57289761));
  EXPECT_LT(S(ratio(12, 100)), 1);
  EXPECT_GT(S(ratio(13, 100)), 1);
  EXPECT_LT(S(ratio(12, 100)) + 1, 2);
  EXPECT_GT(S(ratio(13, 100)) + 1, 2);
}

TEST(RatFun, NormalizationAndArithmetic) {
  const Polynomial x = Polynomial::identity();
  const Polynomial one = Polynomial::constant(1);
  const RationalFunction f((x - one) * (x + one) * 2, (x - one) * 4);
  EXPECT_EQ(f.den(), Polynomial::constant(1));
  EXPECT_EQ(f.num(), (x + one) * ratio(1, 2));
  const RationalFunction g(one, x);
  EXPECT_EQ((f * g) / g, f);
  EXPECT_EQ((f + g) - g, f);
  EXPECT_EQ(g.derivative(), RationalFunction(-one, x.pow(2)));
}

TEST(RatFun, SeriesMatchesGeometric) {
  const Polynomial x = Polynomial::identity();
  const RationalFunction f(Polynomial::constant(1), Polynomial::constant(1) - x * 2);
  const auto s = f.series(30);
  Rational pow2 = 1;
  for (std::size_t k = 0; k <= 30; ++k, pow2 *= 2)
    EXPECT_EQ(s[k], pow2);
}

TEST(Bisection, IdentityFunction) {
  const RationalFunction f(Polynomial::identity());
  const auto b = certified_monotone_root(f, ratio(1, 2), 0, 1, ratio(1, 1024));
  EXPECT_LE(b.lo, ratio(1, 2));
  EXPECT_GE(b.hi, ratio(1, 2));
  EXPECT_LE(b.width(), ratio(1, 1024));
}

TEST(Bisection, QuinticBracketShrinks) {
  const RationalFunction S = cy_series(5);
  const auto b = certified_monotone_root(S, 1, ratio(12, 100), ratio(13, 100), ratio(1, 1'000'000'000));
  EXPECT_LT(S(b.lo), 1);
  EXPECT_GT(S(b.hi), 1);
  EXPECT_LE(b.width(), ratio(1, 1'000'000'000));
  EXPECT_NEAR(to_double(b.midpoint()), 0.12945576719387233, 1e-9);
  EXPECT_NEAR(static_cast<double>(newton_polish(S, 1, b)), 0.12945576719387233, 1e-15);
}

TEST(Bisection, SexticOnUnitInterval) {
  const RationalFunction S = cy_series(6);
  // x = 1 is a pole of S; the solver works inside it.
  EXPECT_THROW(certified_monotone_root(S, 1, 0, 1, ratio(1, 1 << 20)), PoleError);
  const auto b = certified_monotone_root(S, 1, 0, ratio(99, 100), ratio(1, 1 << 30));
  EXPECT_NEAR(to_double(b.midpoint()), 0.1091015322759001, 1e-8);
}

TEST(Bisection, Errors) {
  const RationalFunction S = cy_series(5);
  EXPECT_THROW(certified_monotone_root(S, 1, ratio(1, 100), ratio(2, 100), ratio(1, 100)),
               NoSignChange);
  EXPECT_THROW(certified_monotone_root(S, 1, ratio(12, 100), ratio(13, 100), ratio(1, Integer(1) << 50), 5),
               ToleranceNotAchieved);
}
